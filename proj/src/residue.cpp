#include "cavshift/residue.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"
#include "cavshift/residue_internal.hpp"

namespace cavshift {

namespace {

// Trapezoid rule on |omega| = rho: Res = (1/N) sum f(w_j) w_j.  Exact for
// Laurent terms w^m with |m + 1| < N; node phases are offset half a step so
// the real axis is never sampled exactly.
cplx contour_estimate(const std::function<cplx(cplx)>& f, double rho, int nodes,
                      double* max_magnitude) {
  cplx acc{0.0, 0.0};
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * constants::pi * (j + 0.5) / nodes;
    const cplx w = rho * cplx(std::cos(theta), std::sin(theta));
    const cplx fw = f(w);
    if (!std::isfinite(fw.real()) || !std::isfinite(fw.imag()))
      throw PoleError("pole or resonance on the residue contour", 0.0, w);
    const cplx term = fw * w;
    if (max_magnitude) *max_magnitude = std::max(*max_magnitude, std::abs(term));
    acc += term;
  }
  return acc / static_cast<double>(nodes);
}

}  // namespace

ContourResidue residue_contours(const std::function<cplx(cplx)>& f, double radius,
                                const ResidueSettings& settings) {
  if (!(radius > 0.0)) throw InvalidArgument("contour radius must be positive");
  if (settings.nodes < 8 || settings.nodes % 2 != 0)
    throw InvalidArgument("contour nodes must be even and >= 8");
  if (settings.halving_checks < 1)
    throw InvalidArgument("at least one radius-halving check is required");

  ContourResidue out;
  out.radius_used = radius;
  std::vector<cplx> values;
  values.reserve(settings.halving_checks + 1);
  double rho = radius;
  for (int k = 0; k <= settings.halving_checks; ++k, rho *= 0.5)
    values.push_back(contour_estimate(f, rho, settings.nodes, &out.contour_magnitude));

  for (size_t k = 1; k < values.size(); ++k)
    out.spread = std::max(out.spread, std::abs(values[k] - values[k - 1]));

  // The largest radius has the least rounding amplification; the halvings
  // only vouch for it.
  out.value = values.front();
  out.finest = values.back();
  return out;
}

ResidueResult residue_at_zero(const std::function<cplx(cplx)>& f, double radius,
                              const ResidueSettings& settings) {
  const ContourResidue c = residue_contours(f, radius, settings);
  ResidueResult res{c.value, c.spread, c.radius_used, false};
  res.converged = c.spread <= settings.rel_tol * std::abs(c.value);
  if (!res.converged)
    throw ConvergenceError("residue estimate not stable under radius halving", c.value,
                           c.finest);
  return res;
}

}  // namespace cavshift
