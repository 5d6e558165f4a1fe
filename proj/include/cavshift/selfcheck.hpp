#pragma once

#include <string>
#include <vector>

namespace cavshift {

struct SelfcheckOptions {
  /// Mutation hook: scales the scattering-trace prefactor so sensitivity
  /// of the cross-checks can be demonstrated.  1 in production.
  double trace_scale = 1.0;
};

struct CheckLine {
  std::string name;
  double measured = 0.0;   // worst relative error observed
  double tolerance = 0.0;
  bool pass = false;
};

struct SelfcheckReport {
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

/// Embedded oracle suite: residue exactness on Laurent polynomials,
/// special-function identities, and the two closed-form pipeline
/// cross-checks (perfect conductor across positions, finite-epsilon
/// midpoint).
SelfcheckReport run_selfcheck(const SelfcheckOptions& options = {});

}  // namespace cavshift
