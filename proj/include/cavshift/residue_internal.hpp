#pragma once

#include "cavshift/residue.hpp"

namespace cavshift {

/// Raw multi-contour estimate, without the convergence gate.  The pipeline
/// folds the spread into its integrated error estimate instead of aborting
/// at single k_par nodes (the residue legitimately crosses zero there, so a
/// pointwise relative test is the wrong gate).
struct ContourResidue {
  cplx value{0.0, 0.0};   // largest-radius estimate
  cplx finest{0.0, 0.0};  // smallest-radius estimate
  double spread = 0.0;    // max difference across successive halvings
  double radius_used = 0.0;
  double contour_magnitude = 0.0;  // max |f(w) w| sampled
};

ContourResidue residue_contours(const std::function<cplx(cplx)>& f, double radius,
                                const ResidueSettings& settings);

}  // namespace cavshift
