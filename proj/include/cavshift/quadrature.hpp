#pragma once

#include <array>
#include <functional>

namespace cavshift {

/// Adaptive panel scheme on the substituted variable u = 2 k_par min(z, d-z).
struct QuadratureSettings {
  double u_max = 60.0;      // exp(-60) is far below any tolerance in use
  double rel_tol = 1e-9;
  int max_panels = 2048;
  int initial_panels = 8;
};

struct QuadratureResult {
  double value = 0.0;
  double side = 0.0;       // integral of the side channel (error carriers)
  double abs_error = 0.0;  // refinement estimate for `value`
  int panels = 0;
  bool converged = false;
};

/// Integrates f over [a, b] with Gauss-Kronrod 7/15 panels, bisecting the
/// worst panel until the summed error estimate meets rel_tol or max_panels
/// is reached.  f returns {integrand, side_channel}; refinement is driven
/// by the first component only.  Panel sums are accumulated in position
/// order, so results do not depend on refinement bookkeeping.
QuadratureResult integrate_adaptive(const std::function<std::array<double, 2>(double)>& f,
                                    double a, double b, const QuadratureSettings& settings);

}  // namespace cavshift
