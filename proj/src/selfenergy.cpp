#include "cavshift/selfenergy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>

#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"
#include "cavshift/residue_internal.hpp"

namespace cavshift {

namespace {

constexpr double kC = constants::speed_of_light;

double shift_prefactor(const ElectronState& e) {
  return -(e.charge * e.charge) /
         (2.0 * e.mass * e.mass * constants::vacuum_permittivity * kC * kC);
}

struct ChannelWeights {
  double par;   // <p_par^2>/2
  double perp;  // <p_perp^2>
};

// Residue of the momentum-weighted trace over omega at one k_par, with the
// halving spread and imaginary leak reported as side error.
struct NodeResidue {
  double value;
  double error;
};

template <class Integrand>
NodeResidue weighted_residue(double k_par, const DielectricModel& model,
                             const ChannelWeights& w, const SelfEnergySettings& s,
                             const Integrand& integrand) {
  const double radius = model.contour_radius(k_par, s.residue.radius_fraction);
  auto f = [&](cplx omega) -> cplx {
    KOmegaPoint pt = make_k_omega_point(k_par, omega, model);
    const ChannelIntegrand t = integrand(pt);
    return (w.par * t.parallel + w.perp * t.perpendicular) / omega;
  };
  ContourResidue r;
  try {
    r = residue_contours(f, radius, s.residue);
  } catch (const PoleError& err) {
    std::ostringstream msg;
    msg << err.what() << " at k_par = " << k_par << " 1/m";
    throw PoleError(msg.str(), k_par, err.omega());
  }
  // Physical residues are real; the imaginary part is rounding leak.
  return NodeResidue{r.value.real(), r.spread + std::abs(r.value.imag())};
}

template <class Integrand>
ShiftResult run_pipeline(const DielectricModel& model, const ElectronState& electron,
                         double length_scale, const SelfEnergySettings& settings,
                         const Integrand& integrand) {
  electron.validate();
  // The truncated tail scales like exp(-u_max); it must sit three orders
  // below the quadrature tolerance.
  if (std::exp(-settings.quadrature.u_max) >= settings.quadrature.rel_tol * 1e-3)
    throw InvalidArgument(
        "u_max too small: exp(-u_max) must be below quadrature rel_tol * 1e-3");
  const ChannelWeights w{0.5 * electron.p_par_sq, electron.p_perp_sq};

  const double two_m = 2.0 * length_scale;  // u = 2 k_par min(z, d-z)
  auto f = [&](double u) -> std::array<double, 2> {
    const double k_par = u / two_m;
    const NodeResidue r =
        weighted_residue(k_par, model, w, settings, integrand);
    return {r.value / two_m, r.error / two_m};
  };

  const QuadratureResult q =
      integrate_adaptive(f, 0.0, settings.quadrature.u_max, settings.quadrature);

  const double pref = shift_prefactor(electron);

  ShiftResult out;
  out.value = pref * q.value;
  out.diagnostics.contour_nodes = settings.residue.nodes;
  out.diagnostics.radius_fraction = settings.residue.radius_fraction;
  out.diagnostics.quad_panels = q.panels;
  out.diagnostics.quad_error = std::abs(pref) * q.abs_error;
  out.diagnostics.contour_spread = std::abs(pref) * q.side;
  out.diagnostics.quad_converged = q.converged;
  out.diagnostics.contour_converged =
      q.side <= settings.residue.rel_tol * std::max(std::abs(q.value), 1e-300) * 10.0 ||
      q.side == 0.0;
  out.abs_error_estimate = out.diagnostics.quad_error + out.diagnostics.contour_spread;
  return out;
}

}  // namespace

ShiftResult self_energy(const DielectricModel& model, const CavityConfig& cavity,
                        const ElectronState& electron, const SelfEnergySettings& settings) {
  cavity.validate();
  const double z = cavity.z;
  const double d = cavity.d;
  const double trace_scale = settings.trace_scale;
  // trace_scale is applied once, inside the integrand, so the mutation hook
  // perturbs the pipeline rather than the outer prefactor bookkeeping.
  SelfEnergySettings inner = settings;
  inner.trace_scale = 1.0;
  auto integrand = [&, trace_scale](const KOmegaPoint& pt) {
    return cavity_trace_integrand(pt, model, z, d, trace_scale);
  };
  return run_pipeline(model, electron, std::min(z, d - z), inner, integrand);
}

ShiftResult self_energy_single_interface(const DielectricModel& model, double z,
                                         const ElectronState& electron,
                                         const SelfEnergySettings& settings) {
  if (!(z > 0.0)) throw InvalidArgument("need z > 0");
  const double trace_scale = settings.trace_scale;
  SelfEnergySettings inner = settings;
  inner.trace_scale = 1.0;
  auto integrand = [&, trace_scale](const KOmegaPoint& pt) {
    return single_interface_trace_integrand(pt, model, z, trace_scale);
  };
  return run_pipeline(model, electron, z, inner, integrand);
}

std::vector<ProfilePoint> shift_profile(const DielectricModel& model, double d,
                                        const ElectronState& electron,
                                        const std::vector<double>& zeta_grid,
                                        const SelfEnergySettings& settings, int n_threads) {
  std::vector<ProfilePoint> out(zeta_grid.size());
  auto compute = [&](size_t i) {
    out[i].zeta = zeta_grid[i];
    try {
      out[i].result = self_energy(model, CavityConfig::from_zeta(d, zeta_grid[i]),
                                  electron, settings);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  };

  if (n_threads <= 1 || zeta_grid.size() < 2) {
    for (size_t i = 0; i < zeta_grid.size(); ++i) compute(i);
    return out;
  }

  // Points are independent and written to distinct slots, so the result is
  // identical for every thread count.
  std::atomic<size_t> next{0};
  std::vector<std::future<void>> workers;
  const int pool = std::min<int>(n_threads, static_cast<int>(zeta_grid.size()));
  for (int t = 0; t < pool; ++t) {
    workers.push_back(std::async(std::launch::async, [&]() {
      for (size_t i = next.fetch_add(1); i < zeta_grid.size(); i = next.fetch_add(1))
        compute(i);
    }));
  }
  for (auto& wk : workers) wk.get();
  return out;
}

ForceResult dynamical_force(const DielectricModel& model, const CavityConfig& cavity,
                            const ElectronState& electron, const SelfEnergySettings& settings) {
  cavity.validate();
  const double h = settings.force_step_rel * cavity.d;
  if (cavity.z - 2.0 * h <= 0.0 || cavity.z + 2.0 * h >= cavity.d)
    throw InvalidArgument(
        "difference step collides with a plate; use a smaller force_step_rel");

  auto shift_at = [&](double z) {
    return self_energy(model, CavityConfig{cavity.d, z}, electron, settings);
  };

  double worst_err = 0.0;
  auto central = [&](double step) {
    const ShiftResult hi = shift_at(cavity.z + step);
    const ShiftResult lo = shift_at(cavity.z - step);
    worst_err = std::max(worst_err,
                         (hi.abs_error_estimate + lo.abs_error_estimate) / (2.0 * step));
    return (hi.value - lo.value) / (2.0 * step);
  };

  const double d_h = central(h);
  const double d_h2 = central(0.5 * h);
  const double gradient = (4.0 * d_h2 - d_h) / 3.0;  // one Richardson level

  ForceResult out;
  out.value = -gradient;
  out.abs_error_estimate = std::abs(d_h2 - d_h) / 3.0 + worst_err;
  return out;
}

double mass_shift(double delta_e, const ElectronState& electron) {
  const double p_sq = electron.p_sq();
  if (!(p_sq > 0.0))
    throw InvalidArgument("mass shift undefined for zero momentum");
  return -2.0 * electron.mass * electron.mass * delta_e / p_sq;
}

}  // namespace cavshift
