#include "cavshift/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "cavshift/closedform.hpp"
#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"
#include "cavshift/rng.hpp"
#include "cavshift/version.hpp"

namespace cavshift::experiment {

namespace {

using namespace cavshift::constants;

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) {
    v.push_back(start);
    return v;
  }
  v.reserve(count);
  for (int i = 0; i < count; ++i)
    v.push_back(start + (stop - start) * i / (count - 1));
  return v;
}

/// F_dyn is exactly quadratic in beta (the shift is linear in <p^2>), so one
/// evaluation per (z, d) serves the whole beta grid and every beta-coupled
/// partial derivative.
class DynForceCache {
 public:
  DynForceCache(const DielectricModel& model, const SelfEnergySettings& settings,
                double beta_ref)
      : model_(model), settings_(settings), beta_ref_(beta_ref) {}

  double force(double z, double d, double beta) {
    return beta * beta * w_at(z, d);
  }

 private:
  double w_at(double z, double d) {
    const auto key = std::make_pair(z, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const ElectronState e = ElectronState::from_beta(beta_ref_);
    const double f =
        dynamical_force(model_, CavityConfig{d, z}, e, settings_).value;
    const double w = f / (beta_ref_ * beta_ref_);
    cache_.emplace(key, w);
    return w;
  }

  const DielectricModel& model_;
  const SelfEnergySettings& settings_;
  double beta_ref_;
  std::map<std::pair<double, double>, double> cache_;
};

/// Recorded value of an observable: the physics responds to the true
/// z, d, R, B0, while the recorded abscissa and unit conversions keep the
/// nominal beta (that mismatch is exactly what parameter uncertainty means
/// for the apparatus).
class Observable {
 public:
  Observable(Quantity q, bool include_dyn, const DielectricModel& model, double beta_nom,
             DynForceCache* cache)
      : q_(q), include_dyn_(include_dyn), model_(model), beta_nom_(beta_nom),
        cache_(cache) {}

  double eval(double z, double d, double ring_radius, double b0) const {
    const double beta_true = beta_for_field(b0, ring_radius);
    const double f_static = closedform::static_force(model_, z / d, d);
    const double f_dyn =
        include_dyn_ ? cache_->force(z, d, beta_true) : 0.0;
    const double db = -(f_static + f_dyn) /
                      (elementary_charge * beta_true * speed_of_light);
    switch (q_) {
      case Quantity::DeltaB:
        return db;
      case Quantity::BetaDeltaB:
        return beta_nom_ * db;
      case Quantity::MRatio:
        if (f_static == 0.0)
          throw InvalidArgument("modulation ratio undefined where the static force vanishes");
        return -f_dyn / f_static;
    }
    throw InvalidArgument("unreachable quantity");
  }

 private:
  Quantity q_;
  bool include_dyn_;
  const DielectricModel& model_;
  double beta_nom_;
  DynForceCache* cache_;
};

PropagationResult propagate_observable(const Observable& obs, const ExperimentConfig& cfg,
                                       double beta, std::uint64_t seed) {
  const UncertaintyBudget& b = cfg.budget;
  const double b0 = cyclotron_field(beta, cfg.ring_radius);
  const double sigma_b0 = b.field_stability * b0;

  PropagationResult out;
  out.value = obs.eval(cfg.z, cfg.d, cfg.ring_radius, b0);

  // First-order contributions (also reported in Monte Carlo mode).
  struct Source {
    const char* name;
    double sigma;
    double* contrib;
  };
  double contribs[4] = {0, 0, 0, 0};
  Source sources[4] = {
      {"z", b.sigma_z, &contribs[0]},
      {"d", b.sigma_d, &contribs[1]},
      {"R", b.sigma_r, &contribs[2]},
      {"B0", sigma_b0, &contribs[3]},
  };
  for (int i = 0; i < 4; ++i) {
    if (sources[i].sigma == 0.0) continue;
    const double h = 1e-3 * sources[i].sigma;
    double zp = cfg.z, dp = cfg.d, rp = cfg.ring_radius, bp = b0;
    double zm = cfg.z, dm = cfg.d, rm = cfg.ring_radius, bm = b0;
    switch (i) {
      case 0: zp += h; zm -= h; break;
      case 1: dp += h; dm -= h; break;
      case 2: rp += h; rm -= h; break;
      case 3: bp += h; bm -= h; break;
    }
    const double partial =
        (obs.eval(zp, dp, rp, bp) - obs.eval(zm, dm, rm, bm)) / (2.0 * h);
    if (!std::isfinite(partial)) {
      std::ostringstream msg;
      msg << "non-finite partial derivative with respect to " << sources[i].name;
      throw InvalidArgument(msg.str());
    }
    *sources[i].contrib = std::abs(partial) * sources[i].sigma;
  }
  out.contrib_z = contribs[0];
  out.contrib_d = contribs[1];
  out.contrib_r = contribs[2];
  out.contrib_field = contribs[3];

  if (b.method == UncertaintyBudget::Method::FirstOrder) {
    out.sigma = std::sqrt(contribs[0] * contribs[0] + contribs[1] * contribs[1] +
                          contribs[2] * contribs[2] + contribs[3] * contribs[3]);
    return out;
  }

  // Monte Carlo: independent normal draws from a counter-based stream.
  const int n = b.mc_samples;
  if (n < 2) throw InvalidArgument("mc_samples must be at least 2");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = cfg.z + b.sigma_z * rng::standard_normal(seed, 1, i);
    const double d = cfg.d + b.sigma_d * rng::standard_normal(seed, 2, i);
    const double r = cfg.ring_radius + b.sigma_r * rng::standard_normal(seed, 3, i);
    const double f = b0 * (1.0 + b.field_stability * rng::standard_normal(seed, 4, i));
    const double q = obs.eval(z, d, r, f);
    sum += q;
    sum_sq += q * q;
  }
  const double mean = sum / n;
  out.sigma = std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)));
  return out;
}

nlohmann::ordered_json model_manifest(const DielectricModel& m) {
  nlohmann::ordered_json j;
  j["kind"] = m.name();
  if (m.kind() != DielectricModel::Kind::PerfectConductor &&
      m.kind() != DielectricModel::Kind::Custom) {
    j["omega_p"] = m.omega_p();
    if (m.kind() == DielectricModel::Kind::DrudeLorentz) j["omega_t"] = m.omega_t();
    if (m.kind() != DielectricModel::Kind::Plasma) j["gamma"] = m.gamma();
  }
  return j;
}

nlohmann::ordered_json base_manifest(const std::string& figure,
                                     const ExperimentConfig& cfg,
                                     const SelfEnergySettings& num, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["generator"] = {{"name", project_name}, {"version", project_version}};
  j["figure"] = figure;
  j["model"] = model_manifest(cfg.model);
  j["geometry"] = {{"d", cfg.d}, {"ring_radius", cfg.ring_radius}};
  j["budget"] = {{"sigma_z", cfg.budget.sigma_z},
                 {"sigma_d", cfg.budget.sigma_d},
                 {"sigma_r", cfg.budget.sigma_r},
                 {"field_stability", cfg.budget.field_stability},
                 {"mc_samples", cfg.budget.mc_samples},
                 {"method", cfg.budget.method == UncertaintyBudget::Method::FirstOrder
                                ? "first-order"
                                : "monte-carlo"}};
  j["numerics"] = {
      {"residue",
       {{"radius_fraction", num.residue.radius_fraction},
        {"nodes", num.residue.nodes},
        {"halving_checks", num.residue.halving_checks},
        {"rel_tol", num.residue.rel_tol}}},
      {"quadrature",
       {{"u_max", num.quadrature.u_max},
        {"rel_tol", num.quadrature.rel_tol},
        {"max_panels", num.quadrature.max_panels}}},
      {"force_step_rel", num.force_step_rel}};
  j["seed"] = seed;
  return j;
}

DielectricModel plasma_companion(const DielectricModel& m) {
  if (m.kind() != DielectricModel::Kind::DrudeLorentz)
    throw InvalidArgument(
        "figure datasets expect a drude_lorentz material; the plasma companion is "
        "derived from its omega_p");
  return DielectricModel::plasma(m.omega_p());
}

}  // namespace

void UncertaintyBudget::validate() const {
  if (sigma_z < 0 || sigma_d < 0 || sigma_r < 0 || field_stability < 0)
    throw InvalidArgument("uncertainty budget entries must be non-negative");
  if (mc_samples < 2) throw InvalidArgument("mc_samples must be at least 2");
}

void ExperimentConfig::validate() const {
  if (!(d > 0.0) || !(ring_radius > 0.0)) throw InvalidArgument("need d, R > 0");
  if (ring_radius / d < 20.0)
    throw InvalidArgument(
        "R/d < 20: the locally-parallel-plates treatment of the tube is invalid");
  budget.validate();
  for (double b : beta_grid)
    if (!(b > 0.0) || b >= 1.0) throw InvalidArgument("beta grid values must be in (0, 1)");
}

std::string ExperimentConfig::geometry_warning() const {
  if (ring_radius / d < 100.0) {
    std::ostringstream msg;
    msg << "R/d = " << ring_radius / d
        << " is below 100; edge corrections at the tube ends may not be negligible";
    return msg.str();
  }
  return {};
}

double cyclotron_field(double beta, double ring_radius) {
  if (!(beta > 0.0) || beta >= 1.0) throw InvalidArgument("beta must be in (0, 1)");
  if (!(ring_radius > 0.0)) throw InvalidArgument("ring radius must be positive");
  return cyclotron_constant * beta / ring_radius;
}

double beta_for_field(double b0, double ring_radius) {
  return b0 * ring_radius / cyclotron_constant;
}

double delta_b_static(const DielectricModel& model, double zeta, double d, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const double f_static = closedform::static_force(model, zeta, d);
  return -f_static / (elementary_charge * beta * speed_of_light);
}

double delta_b(const DielectricModel& model, double zeta, double d, double beta,
               const SelfEnergySettings& settings) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const double f_static = closedform::static_force(model, zeta, d);
  const ElectronState electron = ElectronState::from_beta(beta);
  const double f_dyn =
      dynamical_force(model, CavityConfig::from_zeta(d, zeta), electron, settings).value;
  return -(f_static + f_dyn) / (elementary_charge * beta * speed_of_light);
}

double m_ratio(const DielectricModel& model, double zeta, double d, double beta,
               const SelfEnergySettings& settings) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const double f_static = closedform::static_force(model, zeta, d);
  if (f_static == 0.0)
    throw InvalidArgument("modulation ratio undefined at the midpoint (F_static = 0)");
  const ElectronState electron = ElectronState::from_beta(beta);
  const double f_dyn =
      dynamical_force(model, CavityConfig::from_zeta(d, zeta), electron, settings).value;
  const double direct = -f_dyn / f_static;

  // Same ratio through the modulation route; the two must agree to rounding.
  const double db = -(f_static + f_dyn) / (elementary_charge * beta * speed_of_light);
  const double db_static = -f_static / (elementary_charge * beta * speed_of_light);
  const double via_modulation = 1.0 - db / db_static;
  if (std::abs(direct - via_modulation) >
      1e-10 * std::max(std::abs(direct), std::abs(via_modulation)))
    throw ConvergenceError("modulation-ratio routes disagree", direct, via_modulation);
  return direct;
}

PropagationResult propagate_errors(Quantity quantity, const ExperimentConfig& config,
                                   double beta, std::uint64_t seed,
                                   const SelfEnergySettings& settings) {
  config.validate();
  DynForceCache cache(config.model, settings, beta);
  const Observable obs(quantity, true, config.model, beta, &cache);
  return propagate_observable(obs, config, beta, seed);
}

FigureId figure_id_from_string(const std::string& name) {
  if (name == "fig1") return FigureId::Fig1;
  if (name == "fig2") return FigureId::Fig2;
  if (name == "fig3") return FigureId::Fig3;
  throw InvalidArgument("unknown figure '" + name + "' (expected fig1, fig2 or fig3)");
}

ExperimentConfig default_figure_config(FigureId which) {
  ExperimentConfig cfg;
  cfg.model = DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13);  // gold
  cfg.ring_radius = 1e-3;
  switch (which) {
    case FigureId::Fig1:
      cfg.d = 10e-6;
      cfg.z = 5e-6;
      cfg.electron = ElectronState::from_beta(0.01);
      cfg.zeta_grid = linspace(0.02, 0.98, 97);
      break;
    case FigureId::Fig2:
      // Bounds-pushing regime: large speeds, positions where the
      // ring-radius variance dominates the band.
      cfg.d = 20e-6;
      cfg.z = 2e-6;
      cfg.positions_z = {1.5e-6, 2.0e-6, 2.5e-6};
      cfg.beta_grid = linspace(0.05, 0.35, 13);
      break;
    case FigureId::Fig3:
      cfg.d = 10e-6;
      cfg.z = 1e-6;
      cfg.beta_grid = linspace(0.005, 0.05, 10);
      cfg.working_field = 0.035;
      break;
  }
  return cfg;
}

FigureResult figure_data(FigureId which, const ExperimentConfig& config, std::uint64_t seed,
                         const SelfEnergySettings& settings, int n_threads) {
  config.validate();
  FigureResult out;

  if (which == FigureId::Fig1) {
    const DielectricModel plasma = plasma_companion(config.model);
    const double e0 = closedform::conductor_midpoint_energy(config.d, config.electron);
    const std::vector<double>& grid = config.zeta_grid;
    if (grid.empty()) throw InvalidArgument("empty zeta grid");

    const auto prof_p =
        shift_profile(plasma, config.d, config.electron, grid, settings, n_threads);
    const auto prof_d =
        shift_profile(config.model, config.d, config.electron, grid, settings, n_threads);

    Dataset ds;
    ds.columns = {"zeta",
                  "de_over_e0_plasma",
                  "de_over_e0_drude",
                  "abs_err_over_e0_plasma",
                  "abs_err_over_e0_drude",
                  "failed"};
    for (size_t i = 0; i < grid.size(); ++i) {
      const bool ok = prof_p[i].result.has_value() && prof_d[i].result.has_value();
      if (ok) {
        ds.add_row({grid[i], prof_p[i].result->value / e0, prof_d[i].result->value / e0,
                    prof_p[i].result->abs_error_estimate / e0,
                    prof_d[i].result->abs_error_estimate / e0, 0.0});
      } else {
        ds.add_row({grid[i], std::nullopt, std::nullopt, std::nullopt, std::nullopt, 1.0});
      }
    }
    ds.manifest = base_manifest("fig1", config, settings, seed);
    ds.manifest["plasma_companion"] = model_manifest(plasma);
    ds.manifest["electron"] = {{"beta", config.electron.beta()}};
    ds.manifest["normalisation"] = {{"e0_joule", e0}};
    ds.manifest["zeta_grid"] = {{"start", grid.front()},
                                {"stop", grid.back()},
                                {"count", grid.size()}};
    out.files.emplace_back("fig1", std::move(ds));
    return out;
  }

  if (which == FigureId::Fig2) {
    const DielectricModel plasma = plasma_companion(config.model);
    if (config.beta_grid.empty()) throw InvalidArgument("empty beta grid");
    if (config.positions_z.empty()) throw InvalidArgument("no positions configured");

    struct Family {
      std::string name;
      const DielectricModel* model;
      bool include_dyn;
    };
    const Family families[] = {
        {"static", &config.model, false},
        {"plasma", &plasma, true},
        {"drude", &config.model, true},
    };

    for (const Family& fam : families) {
      Dataset ds;
      ds.columns = {"beta", "b0_tesla"};
      for (size_t p = 0; p < config.positions_z.size(); ++p) {
        ds.columns.push_back("beta_delta_b_z" + std::to_string(p + 1));
        ds.columns.push_back("sigma_z" + std::to_string(p + 1));
      }

      // One force cache per position, shared across the beta grid.
      std::vector<std::unique_ptr<DynForceCache>> caches;
      for (size_t p = 0; p < config.positions_z.size(); ++p)
        caches.push_back(std::make_unique<DynForceCache>(
            *fam.model, settings, config.beta_grid.front()));

      for (double beta : config.beta_grid) {
        std::vector<std::optional<double>> row;
        row.emplace_back(beta);
        row.emplace_back(cyclotron_field(beta, config.ring_radius));
        for (size_t p = 0; p < config.positions_z.size(); ++p) {
          ExperimentConfig point = config;
          point.z = config.positions_z[p];
          const Observable obs(Quantity::BetaDeltaB, fam.include_dyn, *fam.model, beta,
                               caches[p].get());
          const PropagationResult res = propagate_observable(obs, point, beta, seed);
          row.emplace_back(res.value);
          row.emplace_back(res.sigma);
        }
        ds.add_row(std::move(row));
      }

      ds.manifest = base_manifest("fig2", config, settings, seed);
      ds.manifest["family"] = fam.name;
      ds.manifest["family_model"] = model_manifest(*fam.model);
      ds.manifest["includes_dynamical_force"] = fam.include_dyn;
      ds.manifest["positions_z"] = config.positions_z;
      ds.manifest["beta_grid"] = {{"start", config.beta_grid.front()},
                                  {"stop", config.beta_grid.back()},
                                  {"count", config.beta_grid.size()}};
      out.files.emplace_back("fig2_" + fam.name, std::move(ds));
    }
    return out;
  }

  // Fig3: modulation ratio at fixed z, plus the schematic square-wave
  // schedule at the working point.
  const DielectricModel plasma = plasma_companion(config.model);
  if (config.beta_grid.empty()) throw InvalidArgument("empty beta grid");

  Dataset ds;
  ds.columns = {"beta", "b0_tesla", "m_plasma", "sigma_m_plasma",
                "m_drude", "sigma_m_drude", "failed"};
  DynForceCache cache_p(plasma, settings, config.beta_grid.front());
  DynForceCache cache_d(config.model, settings, config.beta_grid.front());
  for (double beta : config.beta_grid) {
    const double b0 = cyclotron_field(beta, config.ring_radius);
    try {
      const Observable obs_p(Quantity::MRatio, true, plasma, beta, &cache_p);
      const Observable obs_d(Quantity::MRatio, true, config.model, beta, &cache_d);
      const PropagationResult rp = propagate_observable(obs_p, config, beta, seed);
      const PropagationResult rd = propagate_observable(obs_d, config, beta, seed);
      ds.add_row({beta, b0, rp.value, rp.sigma, rd.value, rd.sigma, 0.0});
    } catch (const std::exception&) {
      ds.add_row({beta, b0, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 1.0});
    }
  }
  ds.manifest = base_manifest("fig3", config, settings, seed);
  ds.manifest["plasma_companion"] = model_manifest(plasma);
  ds.manifest["position_z"] = config.z;
  ds.manifest["beta_grid"] = {{"start", config.beta_grid.front()},
                              {"stop", config.beta_grid.back()},
                              {"count", config.beta_grid.size()}};
  out.files.emplace_back("fig3", std::move(ds));

  // Schematic dB(t): modulation on while confined (second half-period).
  const double beta_work = beta_for_field(config.working_field, config.ring_radius);
  const double zeta = config.z / config.d;
  const double db_plasma = delta_b(plasma, zeta, config.d, beta_work, settings);
  const double db_drude = delta_b(config.model, zeta, config.d, beta_work, settings);
  Dataset inset;
  inset.columns = {"t_over_period", "delta_b_plasma_tesla", "delta_b_drude_tesla"};
  const int n_t = 200;
  for (int i = 0; i < n_t; ++i) {
    const double t = static_cast<double>(i) / n_t;
    const bool confined = t >= 0.5;
    inset.add_row({t, confined ? db_plasma : 0.0, confined ? db_drude : 0.0});
  }
  inset.manifest = base_manifest("fig3_inset", config, settings, seed);
  inset.manifest["note"] =
      "schematic square-wave schedule; modulation applied during the confined "
      "half-period";
  inset.manifest["working_field_tesla"] = config.working_field;
  inset.manifest["beta_at_working_field"] = beta_work;
  out.files.emplace_back("fig3_inset", std::move(inset));
  return out;
}

}  // namespace cavshift::experiment
