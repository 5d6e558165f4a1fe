#pragma once

#include <string>

#include "cavshift/constants.hpp"

// Core parameter records shared by all modules.  All types are immutable
// value records; safe to copy and share between threads.

namespace cavshift {

/// Electron momentum second moments, mass and charge.
///
/// p_par_sq is the total in-plane second moment <p_x^2 + p_y^2>; p_perp_sq
/// is the moment along the plate normal.  A beam moving parallel to the
/// plates at speed beta*c has p_par_sq = (m beta c)^2 and p_perp_sq = 0.
struct ElectronState {
  double p_par_sq = 0.0;   // kg^2 m^2 / s^2
  double p_perp_sq = 0.0;  // kg^2 m^2 / s^2
  double mass = constants::electron_mass;
  double charge = constants::elementary_charge;

  static ElectronState from_beta(double beta);

  /// Speed fraction implied by the parallel moment (sharp-momentum reading).
  double beta() const;

  /// Total second moment <p^2>.
  double p_sq() const { return p_par_sq + p_perp_sq; }

  void validate() const;
};

/// Plate separation d and electron position z, measured from the plate at
/// z = 0.  Valid iff 0 < z < d.
struct CavityConfig {
  double d = 0.0;  // m
  double z = 0.0;  // m

  static CavityConfig from_zeta(double d, double zeta);

  double zeta() const { return z / d; }
  void validate() const;
};

/// Dimensionless view of a (cavity, electron) pair: lengths scaled by d,
/// frequencies by c/d, momenta by m*c.
struct InternalParams {
  double zeta = 0.0;
  double p_par_sq_norm = 0.0;   // <p_par^2>/(m c)^2
  double p_perp_sq_norm = 0.0;  // <p_perp^2>/(m c)^2
  double length_scale = 0.0;    // d, m
  double freq_scale = 0.0;      // c/d, rad/s
  double mass = 0.0;
  double charge = 0.0;
};

InternalParams to_internal(const CavityConfig& cavity, const ElectronState& electron);

/// Inverse of to_internal; round-trips to relative 1e-15.
void from_internal(const InternalParams& internal, CavityConfig& cavity,
                   ElectronState& electron);

/// Convergence bookkeeping attached to every computed shift.
struct ShiftDiagnostics {
  int contour_nodes = 0;
  double radius_fraction = 0.0;
  int quad_panels = 0;
  double quad_error = 0.0;      // J, from panel refinement
  double contour_spread = 0.0;  // J, integrated radius-halving spread
  double imag_leak = 0.0;       // J, |imaginary part| that should vanish
  bool quad_converged = false;
  bool contour_converged = false;

  bool converged() const { return quad_converged && contour_converged; }
};

/// Energy value with a numerical-error estimate.
struct ShiftResult {
  double value = 0.0;               // J
  double abs_error_estimate = 0.0;  // J
  ShiftDiagnostics diagnostics;
};

/// Force value with a numerical-error estimate.  Positive values point
/// toward increasing z.
struct ForceResult {
  double value = 0.0;               // N
  double abs_error_estimate = 0.0;  // N
};

}  // namespace cavshift
