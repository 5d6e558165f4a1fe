#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavshift/dielectric.hpp"
#include "cavshift/experiment.hpp"
#include "cavshift/quantities.hpp"
#include "cavshift/selfenergy.hpp"

namespace cavshift {

/// "start:stop:count" grid.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> values() const;
};

GridSpec parse_grid(const std::string& text);

/// Parsed run configuration.  Fields that stay unset fall back to built-in
/// defaults (per command); command-line flags override file values.
struct RunConfig {
  std::optional<DielectricModel> model;

  std::optional<double> d;
  std::optional<double> z;
  std::optional<double> zeta;
  std::optional<double> ring_radius;

  std::optional<double> beta;
  std::optional<double> p_par_sq;
  std::optional<double> p_perp_sq;

  SelfEnergySettings numerics;
  experiment::UncertaintyBudget budget;

  std::optional<GridSpec> zeta_grid;
  std::optional<GridSpec> beta_grid;
  std::optional<std::vector<double>> positions_z;
  std::optional<double> working_field;

  std::string output_format = "csv";
  std::optional<std::string> output_path;
  int precision = 12;
  std::uint64_t seed = 0;
  int threads = 1;

  ElectronState electron() const;
  CavityConfig cavity() const;  // requires d and (z or zeta)
};

/// Loads and strictly validates a JSON config: unknown keys are rejected
/// with their path; parse errors are reported with a line number.
RunConfig load_config(const std::filesystem::path& path);

/// Schema-checked parse of an already-loaded JSON document.
RunConfig parse_config(const std::string& text);

}  // namespace cavshift
