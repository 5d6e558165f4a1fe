#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavshift/cavity_green.hpp"
#include "cavshift/dielectric.hpp"
#include "cavshift/quadrature.hpp"
#include "cavshift/quantities.hpp"
#include "cavshift/residue.hpp"

// The numerical pipeline: per-k_par residue extraction at omega = 0 by
// contour quadrature, then k_par integration.
//
//   dE = -(e^2 / (2 m^2 eps0 c^2)) * integral dk_par of
//        Res_{omega->0} [ (<p_par^2>/2 t_par + <p_perp^2> t_perp) / omega ]
//
// with the trace integrands of cavity_green.hpp.  Residues of t/omega are
// real for real media; the imaginary leak is tracked as an error term.

namespace cavshift {

struct SelfEnergySettings {
  ResidueSettings residue;
  QuadratureSettings quadrature;
  /// Relative step (in units of d) for the dynamical-force difference.
  double force_step_rel = 1e-4;
  /// Validation hook scaling the trace prefactor; 1 in production.
  double trace_scale = 1.0;
};

/// Surface-dependent self-energy of the electron between the plates.
ShiftResult self_energy(const DielectricModel& model, const CavityConfig& cavity,
                        const ElectronState& electron,
                        const SelfEnergySettings& settings = {});

/// Same pipeline against a single interface at z = 0 (the d -> infinity
/// geometry), using the independently coded one-plate integrand.
ShiftResult self_energy_single_interface(const DielectricModel& model, double z,
                                         const ElectronState& electron,
                                         const SelfEnergySettings& settings = {});

struct ProfilePoint {
  double zeta = 0.0;
  std::optional<ShiftResult> result;  // empty on failure
  std::string error;                  // reason when empty
};

/// dE(zeta) sweep.  Per-point failures are reported in the point record,
/// not thrown.  Points are independent; n_threads > 1 computes them in
/// parallel with identical results for any thread count.
std::vector<ProfilePoint> shift_profile(const DielectricModel& model, double d,
                                        const ElectronState& electron,
                                        const std::vector<double>& zeta_grid,
                                        const SelfEnergySettings& settings = {},
                                        int n_threads = 1);

/// F_dyn = -d(dE)/dz by central differences with one Richardson level.
/// Positive force points toward increasing z.
ForceResult dynamical_force(const DielectricModel& model, const CavityConfig& cavity,
                            const ElectronState& electron,
                            const SelfEnergySettings& settings = {});

/// Mass-shift reading of an energy shift: dm = -2 m^2 dE / <p^2>.
double mass_shift(double delta_e, const ElectronState& electron);

}  // namespace cavshift
