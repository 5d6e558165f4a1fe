#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cavshift/closedform.hpp"
#include "cavshift/config.hpp"
#include "cavshift/dataset.hpp"
#include "cavshift/errors.hpp"
#include "cavshift/experiment.hpp"
#include "cavshift/selfcheck.hpp"
#include "cavshift/selfenergy.hpp"
#include "cavshift/version.hpp"

namespace fs = std::filesystem;
using namespace cavshift;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;
constexpr int kExitSelfcheck = 3;

struct CliOptions {
  std::string config_path;
  std::string output;
  std::string format;
  std::string zeta_grid;
  std::string beta_grid;
  int precision = -1;
  std::int64_t seed = -1;
  int threads = -1;
};

RunConfig effective_config(const CliOptions& cli) {
  RunConfig cfg;
  if (!cli.config_path.empty()) cfg = load_config(cli.config_path);
  // Flags win over file values.
  if (!cli.format.empty()) {
    if (cli.format != "csv" && cli.format != "json")
      throw ConfigError("--format must be csv or json");
    cfg.output_format = cli.format;
  }
  if (!cli.output.empty()) cfg.output_path = cli.output;
  if (cli.precision >= 0) {
    if (cli.precision < 1 || cli.precision > 17)
      throw ConfigError("--precision must be in [1, 17]");
    cfg.precision = cli.precision;
  }
  if (cli.seed >= 0) cfg.seed = static_cast<std::uint64_t>(cli.seed);
  if (cli.threads >= 0) {
    if (cli.threads < 1) throw ConfigError("--threads must be >= 1");
    cfg.threads = cli.threads;
  }
  if (!cli.zeta_grid.empty()) cfg.zeta_grid = parse_grid(cli.zeta_grid);
  if (!cli.beta_grid.empty()) cfg.beta_grid = parse_grid(cli.beta_grid);
  return cfg;
}

fs::path resolve_output(const std::string& name) {
  fs::path p(name);
  if (p.is_relative()) {
    if (const char* outdir = std::getenv("CAVSHIFT_OUTDIR"))
      return fs::path(outdir) / p;
  }
  return p;
}

void write_dataset(const Dataset& ds, const fs::path& path, const RunConfig& cfg) {
  if (cfg.output_format == "json")
    write_json(ds, path, cfg.precision);
  else
    write_csv(ds, path, cfg.precision);
  std::cout << "wrote " << path.string() << "\n";
}

nlohmann::ordered_json shift_manifest(const char* command, const RunConfig& cfg,
                                      const DielectricModel& model,
                                      const CavityConfig& cavity,
                                      const ElectronState& electron) {
  nlohmann::ordered_json j;
  j["generator"] = {{"name", project_name}, {"version", project_version}};
  j["command"] = command;
  j["model"]["kind"] = model.name();
  if (model.kind() == DielectricModel::Kind::Plasma ||
      model.kind() == DielectricModel::Kind::Drude ||
      model.kind() == DielectricModel::Kind::DrudeLorentz) {
    j["model"]["omega_p"] = model.omega_p();
    if (model.kind() == DielectricModel::Kind::DrudeLorentz)
      j["model"]["omega_t"] = model.omega_t();
    if (model.kind() != DielectricModel::Kind::Plasma)
      j["model"]["gamma"] = model.gamma();
  }
  j["geometry"] = {{"d", cavity.d}};
  j["electron"] = {{"p_par_sq", electron.p_par_sq}, {"p_perp_sq", electron.p_perp_sq}};
  j["numerics"] = {{"residue",
                    {{"radius_fraction", cfg.numerics.residue.radius_fraction},
                     {"nodes", cfg.numerics.residue.nodes},
                     {"halving_checks", cfg.numerics.residue.halving_checks},
                     {"rel_tol", cfg.numerics.residue.rel_tol}}},
                   {"quadrature",
                    {{"u_max", cfg.numerics.quadrature.u_max},
                     {"rel_tol", cfg.numerics.quadrature.rel_tol},
                     {"max_panels", cfg.numerics.quadrature.max_panels}}},
                   {"force_step_rel", cfg.numerics.force_step_rel}};
  j["seed"] = cfg.seed;
  return j;
}

int cmd_shift(const CliOptions& cli) {
  const RunConfig cfg = effective_config(cli);
  if (!cfg.zeta_grid || cfg.zeta_grid->count == 0) throw ConfigError("empty grid");
  const std::vector<double> grid = cfg.zeta_grid->values();
  const DielectricModel model =
      cfg.model.value_or(DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13));
  const ElectronState electron = cfg.electron();
  const double d = cfg.d.value_or(10e-6);

  const auto profile =
      shift_profile(model, d, electron, grid, cfg.numerics, cfg.threads);
  const double e0 = closedform::conductor_midpoint_energy(d, electron);

  Dataset ds;
  ds.columns = {"zeta", "delta_e_joule", "delta_e_over_e0", "abs_error_joule", "failed"};
  bool any_failed = false;
  for (const ProfilePoint& p : profile) {
    if (p.result) {
      ds.add_row({p.zeta, p.result->value, p.result->value / e0,
                  p.result->abs_error_estimate, 0.0});
    } else {
      any_failed = true;
      ds.add_row({p.zeta, std::nullopt, std::nullopt, std::nullopt, 1.0});
      std::cerr << "point zeta = " << p.zeta << " failed: " << p.error << "\n";
    }
  }
  ds.manifest = shift_manifest("shift", cfg, model, CavityConfig{d, d / 2}, electron);
  ds.manifest["normalisation"] = {{"e0_joule", e0}};
  ds.manifest["zeta_grid"] = {{"start", cfg.zeta_grid->start},
                              {"stop", cfg.zeta_grid->stop},
                              {"count", cfg.zeta_grid->count}};

  const std::string name =
      cfg.output_path.value_or(std::string("shift.") + cfg.output_format);
  write_dataset(ds, resolve_output(name), cfg);
  return any_failed ? kExitPartial : kExitOk;
}

int cmd_forces(const CliOptions& cli) {
  const RunConfig cfg = effective_config(cli);
  if (!cfg.zeta_grid || cfg.zeta_grid->count == 0) throw ConfigError("empty grid");
  const std::vector<double> grid = cfg.zeta_grid->values();
  const DielectricModel model =
      cfg.model.value_or(DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13));
  const ElectronState electron = cfg.electron();
  const double beta = electron.beta();
  if (!(beta > 0.0)) throw ConfigError("forces need a positive beta");
  const double d = cfg.d.value_or(10e-6);

  Dataset ds;
  ds.columns = {"zeta",          "f_static_newton", "f_dyn_newton", "delta_b_static_tesla",
                "delta_b_tesla", "m",               "m_reason",     "failed"};
  bool any_failed = false;
  for (double zeta : grid) {
    try {
      const double f_static = closedform::static_force(model, zeta, d);
      const double f_dyn =
          dynamical_force(model, CavityConfig::from_zeta(d, zeta), electron, cfg.numerics)
              .value;
      const double e = constants::elementary_charge;
      const double c = constants::speed_of_light;
      const double db_static = -f_static / (e * beta * c);
      const double db = -(f_static + f_dyn) / (e * beta * c);
      if (f_static == 0.0) {
        ds.add_row({zeta, f_static, f_dyn, db_static, db, std::nullopt, 1.0, 0.0});
      } else {
        ds.add_row({zeta, f_static, f_dyn, db_static, db, -f_dyn / f_static, 0.0, 0.0});
      }
    } catch (const std::exception& err) {
      any_failed = true;
      ds.add_row({zeta, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, 1.0});
      std::cerr << "point zeta = " << zeta << " failed: " << err.what() << "\n";
    }
  }
  ds.manifest = shift_manifest("forces", cfg, model, CavityConfig{d, d / 2}, electron);
  ds.manifest["electron"]["beta"] = beta;
  ds.manifest["m_reason_codes"] = {{"0", "defined"}, {"1", "midpoint: F_static = 0"}};

  const std::string name =
      cfg.output_path.value_or(std::string("forces.") + cfg.output_format);
  write_dataset(ds, resolve_output(name), cfg);
  return any_failed ? kExitPartial : kExitOk;
}

int cmd_figure(const std::string& which, const CliOptions& cli) {
  const RunConfig cfg = effective_config(cli);
  const experiment::FigureId id = experiment::figure_id_from_string(which);

  experiment::ExperimentConfig ex = experiment::default_figure_config(id);
  if (cfg.model) ex.model = *cfg.model;
  if (cfg.d) ex.d = *cfg.d;
  if (cfg.z) ex.z = *cfg.z;
  if (cfg.zeta) ex.z = *cfg.zeta * ex.d;
  if (cfg.ring_radius) ex.ring_radius = *cfg.ring_radius;
  if (cfg.beta) ex.electron = ElectronState::from_beta(*cfg.beta);
  if (cfg.beta_grid) ex.beta_grid = cfg.beta_grid->values();
  if (cfg.zeta_grid) ex.zeta_grid = cfg.zeta_grid->values();
  if (cfg.positions_z) ex.positions_z = *cfg.positions_z;
  if (cfg.working_field) ex.working_field = *cfg.working_field;
  ex.budget = cfg.budget;

  const std::string warning = ex.geometry_warning();
  if (!warning.empty()) std::cerr << "warning: " << warning << "\n";

  const experiment::FigureResult result =
      experiment::figure_data(id, ex, cfg.seed, cfg.numerics, cfg.threads);

  const fs::path outdir = resolve_output(cfg.output_path.value_or("."));
  bool any_failed = false;
  for (const auto& [stem, ds] : result.files) {
    for (const auto& row : ds.rows) {
      // A trailing "failed" column marks per-point errors.
      if (!ds.columns.empty() && ds.columns.back() == "failed" && row.back() &&
          *row.back() != 0.0)
        any_failed = true;
    }
    write_dataset(ds, outdir / (stem + "." + cfg.output_format), cfg);
  }
  return any_failed ? kExitPartial : kExitOk;
}

int cmd_selfcheck() {
  const SelfcheckReport report = run_selfcheck();
  for (const CheckLine& c : report.checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (measured "
              << format_double(c.measured, 3) << ", tolerance "
              << format_double(c.tolerance, 3) << ")\n";
  }
  if (!report.all_pass()) {
    std::cout << "selfcheck FAILED\n";
    return kExitSelfcheck;
  }
  std::cout << "selfcheck passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface-dependent electron self-energy between plates"};
  app.set_version_flag("--version", project_version);
  app.require_subcommand(1);

  CliOptions cli;
  app.add_option("--config,-c", cli.config_path, "JSON config file");
  app.add_option("--output,-o", cli.output,
                 "output file (shift/forces) or directory (figure)");
  app.add_option("--format,-f", cli.format, "csv or json");
  app.add_option("--precision", cli.precision, "significant digits in CSV cells");
  app.add_option("--seed", cli.seed, "random seed for uncertainty sampling");
  app.add_option("--threads", cli.threads, "worker threads for sweeps");
  app.add_option("--zeta-grid", cli.zeta_grid, "position grid start:stop:count");
  app.add_option("--beta-grid", cli.beta_grid, "speed grid start:stop:count");

  auto* shift = app.add_subcommand("shift", "energy shift over a position grid");
  auto* forces = app.add_subcommand("forces", "static/dynamical forces and modulation");
  auto* figure = app.add_subcommand("figure", "regenerate a shipped dataset");
  std::string which;
  figure->add_option("which", which, "fig1, fig2 or fig3")->required();
  auto* selfcheck = app.add_subcommand("selfcheck", "run the embedded oracle suite");
  for (auto* sub : {shift, forces, figure, selfcheck}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (shift->parsed()) return cmd_shift(cli);
    if (forces->parsed()) return cmd_forces(cli);
    if (figure->parsed()) return cmd_figure(which, cli);
    if (selfcheck->parsed()) return cmd_selfcheck();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitOk;
}
