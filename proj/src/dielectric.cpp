#include "cavshift/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"

namespace cavshift {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Keeps the contour strictly inside the branch points at |omega| ~ c*k_par.
constexpr double kBranchSafety = 0.25;
}  // namespace

DielectricModel DielectricModel::perfect_conductor() {
  DielectricModel m;
  m.kind_ = Kind::PerfectConductor;
  return m;
}

DielectricModel DielectricModel::plasma(double omega_p) {
  if (!(omega_p > 0.0)) throw InvalidArgument("plasma: omega_p must be positive");
  DielectricModel m;
  m.kind_ = Kind::Plasma;
  m.omega_p_ = omega_p;
  return m;
}

DielectricModel DielectricModel::drude_lorentz(double omega_p, double omega_t,
                                               double gamma) {
  if (!(omega_p > 0.0)) throw InvalidArgument("drude_lorentz: omega_p must be positive");
  if (omega_t < 0.0) throw InvalidArgument("drude_lorentz: omega_t must be >= 0");
  if (gamma < 0.0) throw InvalidArgument("drude_lorentz: gamma must be >= 0");
  DielectricModel m;
  m.kind_ = Kind::DrudeLorentz;
  m.omega_p_ = omega_p;
  m.omega_t_ = omega_t;
  m.gamma_ = gamma;
  return m;
}

DielectricModel DielectricModel::drude(double omega_p, double gamma) {
  DielectricModel m = drude_lorentz(omega_p, 0.0, gamma);
  m.kind_ = Kind::Drude;
  return m;
}

DielectricModel DielectricModel::custom(std::function<cplx(cplx)> eps, StaticTaylor taylor,
                                        double omega_scale) {
  if (!eps) throw InvalidArgument("custom: epsilon callable required");
  if (!(omega_scale > 0.0))
    throw InvalidArgument("custom: a positive frequency scale is required");
  DielectricModel m;
  m.kind_ = Kind::Custom;
  m.custom_eps_ = std::move(eps);
  m.custom_taylor_ = taylor;
  m.custom_scale_ = omega_scale;
  return m;
}

std::string DielectricModel::name() const {
  switch (kind_) {
    case Kind::PerfectConductor: return "perfect_conductor";
    case Kind::Plasma: return "plasma";
    case Kind::DrudeLorentz: return "drude_lorentz";
    case Kind::Drude: return "drude";
    case Kind::Custom: return "custom";
  }
  return "?";
}

cplx DielectricModel::epsilon(cplx omega) const {
  switch (kind_) {
    case Kind::PerfectConductor:
      throw InvalidArgument(
          "perfect conductor has no finite epsilon; use the reflection-coefficient "
          "limit r_s = -1, r_p = +1");
    case Kind::Plasma:
      if (omega == cplx(0.0, 0.0))
        throw PoleError("plasma epsilon has a pole at omega = 0");
      return 1.0 - omega_p_ * omega_p_ / (omega * omega);
    case Kind::DrudeLorentz:
    case Kind::Drude: {
      const cplx den = omega * omega - omega_t_ * omega_t_ + cplx(0.0, 1.0) * gamma_ * omega;
      if (den == cplx(0.0, 0.0))
        throw PoleError("dielectric response pole hit at this omega");
      return 1.0 - omega_p_ * omega_p_ / den;
    }
    case Kind::Custom:
      return custom_eps_(omega);
  }
  throw InvalidArgument("unreachable model kind");
}

cplx DielectricModel::eps_omega_sq(cplx omega) const {
  switch (kind_) {
    case Kind::PerfectConductor:
      throw InvalidArgument("perfect conductor has no finite epsilon");
    case Kind::Plasma:
      return omega * omega - omega_p_ * omega_p_;
    case Kind::DrudeLorentz:
    case Kind::Drude: {
      const cplx den = omega * omega - omega_t_ * omega_t_ + cplx(0.0, 1.0) * gamma_ * omega;
      if (den == cplx(0.0, 0.0))
        throw PoleError("dielectric response pole hit at this omega");
      return omega * omega * (1.0 - omega_p_ * omega_p_ / den);
    }
    case Kind::Custom:
      return custom_eps_(omega) * omega * omega;
  }
  throw InvalidArgument("unreachable model kind");
}

cplx DielectricModel::eta(cplx omega) const {
  if (kind_ == Kind::PerfectConductor) return cplx(1.0, 0.0);
  // Static-pole kinds: eps -> infinity as omega -> 0, so eta -> 1 exactly.
  if (omega == cplx(0.0, 0.0) &&
      (kind_ == Kind::Plasma || (kind_ == Kind::Drude && omega_t_ == 0.0)))
    return cplx(1.0, 0.0);
  const cplx eps = epsilon(omega);
  const cplx den = eps + 1.0;
  if (den == cplx(0.0, 0.0))
    throw PoleError("surface-mode pole: epsilon(omega) = -1");
  return (eps - 1.0) / den;
}

StaticTaylor DielectricModel::static_taylor() const {
  switch (kind_) {
    case Kind::PerfectConductor:
      throw InvalidArgument("perfect conductor has no static Taylor data");
    case Kind::Plasma:
      throw StaticPoleError("plasma epsilon(0) is not finite");
    case Kind::Drude:
      throw StaticPoleError("Drude (omega_t = 0) epsilon(0) is not finite");
    case Kind::DrudeLorentz: {
      if (omega_t_ == 0.0)
        throw StaticPoleError("drude_lorentz with omega_t = 0 has no finite epsilon(0)");
      const double wt2 = omega_t_ * omega_t_;
      const double wp2 = omega_p_ * omega_p_;
      // Series of 1 - wp^2/(w^2 - wt^2 + i g w) about w = 0:
      //   eps0 = 1 + wp^2/wt^2
      //   eps1 = i g wp^2 / wt^4
      //   eps2 = 2 wp^2 (wt^2 - g^2) / wt^6
      return StaticTaylor{
          cplx(1.0 + wp2 / wt2, 0.0),
          cplx(0.0, gamma_ * wp2 / (wt2 * wt2)),
          cplx(2.0 * wp2 * (wt2 - gamma_ * gamma_) / (wt2 * wt2 * wt2), 0.0),
      };
    }
    case Kind::Custom:
      return custom_taylor_;
  }
  throw InvalidArgument("unreachable model kind");
}

bool DielectricModel::has_finite_static_epsilon() const {
  switch (kind_) {
    case Kind::DrudeLorentz: return omega_t_ > 0.0;
    case Kind::Custom: return true;
    default: return false;
  }
}

double DielectricModel::contour_radius(double k_par, double radius_fraction) const {
  const double ck = constants::speed_of_light * k_par;
  double material = kInf;
  double branch = kBranchSafety * ck;
  switch (kind_) {
    case Kind::PerfectConductor:
      break;
    case Kind::Plasma:
      // Medium branch points sit near sqrt(wp^2 + (ck)^2); only the material
      // scale matters.
      material = omega_p_;
      break;
    case Kind::DrudeLorentz:
      if (omega_t_ > 0.0) {
        material = std::min(omega_p_, omega_t_);
        branch /= std::sqrt(1.0 + std::abs(static_taylor().eps0));
      } else {
        material = gamma_ > 0.0 ? std::min(omega_p_, gamma_) : omega_p_;
      }
      break;
    case Kind::Drude: {
      material = gamma_ > 0.0 ? std::min(omega_p_, gamma_) : omega_p_;
      // |eps w^2| ~ wp^2 |w| / gamma must stay below (branch-safe ck)^2.
      if (gamma_ > 0.0 && omega_p_ > 0.0) {
        const double cap = kBranchSafety * kBranchSafety * ck * ck * gamma_ /
                           (omega_p_ * omega_p_);
        branch = std::min(branch, cap);
      }
      break;
    }
    case Kind::Custom:
      material = custom_scale_;
      branch /= std::sqrt(1.0 + std::abs(custom_taylor_.eps0));
      break;
  }
  return std::min(radius_fraction * material, branch);
}

}  // namespace cavshift
