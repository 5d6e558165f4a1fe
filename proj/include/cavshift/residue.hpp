#pragma once

#include <complex>
#include <functional>

namespace cavshift {

using cplx = std::complex<double>;

/// Contour settings for residue extraction at omega = 0.
struct ResidueSettings {
  /// Fraction of the smallest material frequency scale used for the
  /// contour radius.  The radius is additionally capped below the branch
  /// points near c*k_par (see DielectricModel::contour_radius).
  double radius_fraction = 1e-3;
  int nodes = 64;           // trapezoid nodes on the circle; >= 8, even
  int halving_checks = 2;   // extra contours at rho/2, rho/4, ...
  double rel_tol = 1e-8;    // acceptance threshold for the halving spread
};

struct ResidueResult {
  cplx value{0.0, 0.0};
  double spread = 0.0;       // max difference across radius halvings
  double radius_used = 0.0;  // largest radius evaluated
  bool converged = false;
};

/// (1/2pi i) times the contour integral of f around 0, by the trapezoid
/// rule on a circle of the given radius.  Spectrally accurate for analytic
/// f; exact (to rounding) on Laurent polynomials with pole order < nodes.
///
/// Preconditions: f analytic in a punctured disk of radius > `radius` with
/// a finite-order pole at 0.  The result is accepted only if successive
/// radius halvings agree to rel_tol; otherwise a ConvergenceError carrying
/// both values is thrown.  Non-finite samples raise PoleError.
ResidueResult residue_at_zero(const std::function<cplx(cplx)>& f, double radius,
                              const ResidueSettings& settings = {});

}  // namespace cavshift
