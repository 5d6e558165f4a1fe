#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cavshift/dataset.hpp"
#include "cavshift/dielectric.hpp"
#include "cavshift/quantities.hpp"
#include "cavshift/selfenergy.hpp"

// Model of the half-orbit confinement experiment: an electron in cyclotron
// motion spends half of each revolution inside a narrow tube whose walls
// act locally as parallel plates (R >> d).  The magnetic-field modulation
// dB that preserves circular motion while confined encodes the surface
// forces:
//
//   dB        = -(F_static + F_dyn(beta)) / (e beta c)
//   dB_static = -F_static / (e beta c)
//   M         = -F_dyn / F_static  ( = 1 - dB/dB_static )
//
// beta*dB_static is independent of beta; beta*dB is not.

namespace cavshift::experiment {

struct UncertaintyBudget {
  double sigma_z = 2.5e-9;       // m, beam positioning
  double sigma_d = 1e-6;         // m, tube-width manufacturing variance
  double sigma_r = 5e-6;         // m, ring-radius manufacturing variance
  double field_stability = 1e-5; // relative stability of the applied field
  int mc_samples = 10000;
  enum class Method { FirstOrder, MonteCarlo };
  Method method = Method::FirstOrder;

  void validate() const;
};

struct ExperimentConfig {
  DielectricModel model = DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13);
  double ring_radius = 1e-3;  // m
  double d = 10e-6;           // m, tube width
  double z = 1e-6;            // m, electron offset from the near wall
  std::vector<double> beta_grid;
  std::vector<double> zeta_grid;     // position sweep (profile figure)
  std::vector<double> positions_z;   // m, modulation figure families
  double working_field = 0.035;      // T, ratio-figure working point
  ElectronState electron = ElectronState::from_beta(0.01);
  UncertaintyBudget budget;

  /// Throws when R/d < 20 (locally-parallel-plates assumption broken).
  void validate() const;
  /// Non-empty advisory text when 20 <= R/d < 100.
  std::string geometry_warning() const;
};

/// Field that closes the orbit at radius R: B0 = (mc/e) beta / R.
double cyclotron_field(double beta, double ring_radius);

/// Inverse of cyclotron_field: beta = (e/mc) B0 R.
double beta_for_field(double b0, double ring_radius);

/// Modulation from the electrostatic part alone.
double delta_b_static(const DielectricModel& model, double zeta, double d, double beta);

/// Full modulation including the dynamical force.
double delta_b(const DielectricModel& model, double zeta, double d, double beta,
               const SelfEnergySettings& settings = {});

/// Dimensionless ratio M = -F_dyn/F_static.  Also evaluated through the
/// modulation route 1 - dB/dB_static and cross-checked to 1e-10.
/// Undefined at the midpoint (F_static = 0).
double m_ratio(const DielectricModel& model, double zeta, double d, double beta,
               const SelfEnergySettings& settings = {});

enum class Quantity { DeltaB, BetaDeltaB, MRatio };

struct PropagationResult {
  double value = 0.0;
  double sigma = 0.0;
  // First-order contribution of each source (always computed, also in MC
  // mode, for the breakdown).
  double contrib_z = 0.0;
  double contrib_d = 0.0;
  double contrib_r = 0.0;
  double contrib_field = 0.0;
};

/// Uncertainty of a recorded quantity at nominal abscissa beta.
///
/// The recorded value keeps the nominal conversions (the assumed beta and
/// ring radius) while the physics responds to the true parameters; the
/// partial derivatives are taken with respect to the true z, d, R and B0,
/// with sigma_B0 = field_stability * B0.  R and B0 reach the physics only
/// through the realised speed, beta_true = (e/mc) B0 R.
///
/// First-order mode: sigma^2 = sum of (dQ/dx_i)^2 sigma_i^2 with central
/// differences at steps 1e-3 sigma_i.  Monte Carlo mode: independent
/// normal draws from a counter-based stream (bit-reproducible for a fixed
/// seed, independent of threading), sample standard deviation.
PropagationResult propagate_errors(Quantity quantity, const ExperimentConfig& config,
                                   double beta, std::uint64_t seed = 0,
                                   const SelfEnergySettings& settings = {});

enum class FigureId { Fig1, Fig2, Fig3 };

FigureId figure_id_from_string(const std::string& name);

/// Complete default parameter set for each shipped figure.
ExperimentConfig default_figure_config(FigureId which);

struct FigureResult {
  // (file stem, dataset) pairs; each dataset carries its own manifest.
  std::vector<std::pair<std::string, Dataset>> files;
};

/// Datasets behind the shipped figures.
///   Fig1: position profile, dE/E0 for the plasma and Drude-Lorentz models.
///   Fig2: beta*dB (static / plasma / drude families) with error bands at
///         the configured positions, plus the B0 upper-axis column.
///   Fig3: modulation ratio M(beta) with error bands at the configured z,
///         plus a schematic square-wave dB(t) schedule at the working point.
/// Per-point failures are flagged in a status column, not thrown.
FigureResult figure_data(FigureId which, const ExperimentConfig& config,
                         std::uint64_t seed = 0, const SelfEnergySettings& settings = {},
                         int n_threads = 1);

}  // namespace cavshift::experiment
