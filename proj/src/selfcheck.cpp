#include "cavshift/selfcheck.hpp"

#include <cmath>
#include <complex>

#include "cavshift/closedform.hpp"
#include "cavshift/constants.hpp"
#include "cavshift/dielectric.hpp"
#include "cavshift/residue.hpp"
#include "cavshift/selfenergy.hpp"

namespace cavshift {

namespace {

using closedform::dilog;
using closedform::harmonic;
using closedform::lerch_phi;
using constants::pi;

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

double check_residues() {
  double worst = 0.0;
  // Simple pole.
  auto f1 = [](cplx w) { return 3.0 / w; };
  worst = std::max(worst, rel_err(residue_at_zero(f1, 1.0).value.real(), 3.0));
  // Third-order pole plus analytic part.
  auto f2 = [](cplx w) { return 5.0 / (w * w * w) + 2.0 / w + 7.0 + w * w; };
  worst = std::max(worst, rel_err(residue_at_zero(f2, 0.7).value.real(), 2.0));
  // Entire numerator: residue of exp(w)/w is exp(0).
  auto f3 = [](cplx w) { return std::exp(w) / w; };
  worst = std::max(worst, rel_err(residue_at_zero(f3, 0.5).value.real(), 1.0));
  return worst;
}

double check_special_functions() {
  double worst = 0.0;
  worst = std::max(worst, rel_err(dilog(1.0), pi * pi / 6.0));
  const double ln2 = std::log(2.0);
  worst = std::max(worst, rel_err(dilog(0.5), pi * pi / 12.0 - 0.5 * ln2 * ln2));
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    const double lhs = dilog(x) + dilog(1.0 - x);
    const double rhs = pi * pi / 6.0 - std::log(x) * std::log(1.0 - x);
    worst = std::max(worst, rel_err(lhs, rhs));
  }
  for (double x : {0.2, 0.5, 0.8})
    worst = std::max(worst, rel_err(lerch_phi(x, 2.0, 1.0), dilog(x) / x));
  worst = std::max(worst, rel_err(lerch_phi(0.0, 2.0, 0.25), 16.0));
  worst = std::max(worst, rel_err(harmonic(3.0), 11.0 / 6.0));
  worst = std::max(worst, rel_err(harmonic(2.5), 46.0 / 15.0 - 2.0 * ln2));
  return worst;
}

double check_conductor_pipeline(double trace_scale) {
  const ElectronState electron = ElectronState::from_beta(0.01);
  const DielectricModel pc = DielectricModel::perfect_conductor();
  const double d = 10e-6;
  SelfEnergySettings settings;
  settings.trace_scale = trace_scale;
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double zeta = 0.1 * i;
    const ShiftResult got = self_energy(pc, CavityConfig::from_zeta(d, zeta), electron,
                                        settings);
    const double want = closedform::pc_shift(zeta, d, electron);
    worst = std::max(worst, rel_err(got.value, want));
  }
  return worst;
}

double check_midpoint_pipeline(double trace_scale) {
  const ElectronState electron = ElectronState::from_beta(0.01);
  const DielectricModel gold = DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13);
  const double d = 10e-6;
  SelfEnergySettings settings;
  settings.trace_scale = trace_scale;
  const ShiftResult got =
      self_energy(gold, CavityConfig::from_zeta(d, 0.5), electron, settings);
  const double want = closedform::drude_midpoint_shift(gold, d, electron);
  return rel_err(got.value, want);
}

}  // namespace

bool SelfcheckReport::all_pass() const {
  for (const CheckLine& c : checks)
    if (!c.pass) return false;
  return true;
}

SelfcheckReport run_selfcheck(const SelfcheckOptions& options) {
  SelfcheckReport report;
  auto add = [&report](const std::string& name, double measured, double tol) {
    report.checks.push_back({name, measured, tol, measured <= tol});
  };
  add("residue extraction on Laurent polynomials", check_residues(), 1e-12);
  add("dilog / Lerch / harmonic identities", check_special_functions(), 1e-10);
  add("pipeline vs conductor closed form (9 positions)",
      check_conductor_pipeline(options.trace_scale), 1e-6);
  add("pipeline vs finite-epsilon midpoint closed form",
      check_midpoint_pipeline(options.trace_scale), 1e-4);
  return report;
}

}  // namespace cavshift
