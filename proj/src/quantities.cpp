#include "cavshift/quantities.hpp"

#include <cmath>

#include "cavshift/errors.hpp"

namespace cavshift {

ElectronState ElectronState::from_beta(double beta) {
  if (!(beta >= 0.0) || beta >= 1.0)
    throw InvalidArgument("beta must be in [0, 1)");
  ElectronState e;
  const double p = e.mass * beta * constants::speed_of_light;
  e.p_par_sq = p * p;
  e.p_perp_sq = 0.0;
  return e;
}

double ElectronState::beta() const {
  return std::sqrt(p_par_sq) / (mass * constants::speed_of_light);
}

void ElectronState::validate() const {
  if (p_par_sq < 0.0 || p_perp_sq < 0.0)
    throw InvalidArgument("momentum second moments must be non-negative");
  if (!(mass > 0.0) || !(charge > 0.0))
    throw InvalidArgument("electron mass and charge must be positive");
  if (beta() >= 1.0) throw InvalidArgument("parallel momentum implies beta >= 1");
}

CavityConfig CavityConfig::from_zeta(double d, double zeta) {
  CavityConfig c{d, zeta * d};
  c.validate();
  return c;
}

void CavityConfig::validate() const {
  if (!(d > 0.0)) throw InvalidArgument("plate separation d must be positive");
  if (!(z > 0.0) || !(z < d))
    throw InvalidArgument("electron position must satisfy 0 < z < d");
}

InternalParams to_internal(const CavityConfig& cavity, const ElectronState& electron) {
  cavity.validate();
  electron.validate();
  const double mc = electron.mass * constants::speed_of_light;
  return InternalParams{
      cavity.z / cavity.d,
      electron.p_par_sq / (mc * mc),
      electron.p_perp_sq / (mc * mc),
      cavity.d,
      constants::speed_of_light / cavity.d,
      electron.mass,
      electron.charge,
  };
}

void from_internal(const InternalParams& internal, CavityConfig& cavity,
                   ElectronState& electron) {
  cavity.d = internal.length_scale;
  cavity.z = internal.zeta * internal.length_scale;
  const double mc = internal.mass * constants::speed_of_light;
  electron.mass = internal.mass;
  electron.charge = internal.charge;
  electron.p_par_sq = internal.p_par_sq_norm * mc * mc;
  electron.p_perp_sq = internal.p_perp_sq_norm * mc * mc;
}

}  // namespace cavshift
