#include "cavshift/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cavshift/errors.hpp"

namespace cavshift {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      fail("unknown config key '" + where + "/" + it.key() + "'");
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("'" + where + "/" + key + "' is required");
  const auto& v = obj.at(key);
  if (!v.is_number()) fail("'" + where + "/" + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("'" + where + "/" + key + "' is required");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail("'" + where + "/" + key + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail("'" + where + "/" + key + "' is required");
  const auto& v = obj.at(key);
  if (!v.is_string()) fail("'" + where + "/" + key + "' must be a string");
  return v.get<std::string>();
}

GridSpec get_grid(const json& obj, const std::string& where) {
  require_keys(obj, where, {"start", "stop", "count"});
  if (!obj.contains("start") || !obj.contains("stop") || !obj.contains("count"))
    fail("'" + where + "' needs start, stop and count");
  GridSpec g{get_number(obj, where, "start"), get_number(obj, where, "stop"),
             get_int(obj, where, "count")};
  if (g.count < 0) fail("'" + where + "/count' must be >= 0");
  return g;
}

DielectricModel parse_model(const json& m) {
  require_keys(m, "model", {"kind", "omega_p", "omega_t", "gamma"});
  if (!m.contains("kind")) fail("'model/kind' is required");
  const std::string kind = get_string(m, "model", "kind");
  auto num = [&](const char* key) { return get_number(m, "model", key); };
  auto forbid = [&](const char* key) {
    if (m.contains(key))
      fail(std::string("'model/") + key + "' is not a parameter of kind '" + kind + "'");
  };
  if (kind == "perfect_conductor") {
    forbid("omega_p");
    forbid("omega_t");
    forbid("gamma");
    return DielectricModel::perfect_conductor();
  }
  if (kind == "plasma") {
    forbid("omega_t");
    forbid("gamma");
    return DielectricModel::plasma(num("omega_p"));
  }
  if (kind == "drude") {
    forbid("omega_t");
    return DielectricModel::drude(num("omega_p"), num("gamma"));
  }
  if (kind == "drude_lorentz")
    return DielectricModel::drude_lorentz(num("omega_p"), num("omega_t"), num("gamma"));
  fail("'model/kind' must be perfect_conductor, plasma, drude or drude_lorentz");
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> v;
  if (count <= 0) return v;
  if (count == 1) return {start};
  v.reserve(count);
  for (int i = 0; i < count; ++i)
    v.push_back(start + (stop - start) * i / (count - 1));
  return v;
}

GridSpec parse_grid(const std::string& text) {
  std::istringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
    throw ConfigError("grid must be start:stop:count, got '" + text + "'");
  try {
    return GridSpec{std::stod(a), std::stod(b), std::stoi(c)};
  } catch (const std::exception&) {
    throw ConfigError("grid must be start:stop:count with numeric fields, got '" + text +
                      "'");
  }
}

ElectronState RunConfig::electron() const {
  if (p_par_sq || p_perp_sq) {
    if (beta) throw ConfigError("give either electron/beta or momentum moments, not both");
    ElectronState e;
    e.p_par_sq = p_par_sq.value_or(0.0);
    e.p_perp_sq = p_perp_sq.value_or(0.0);
    e.validate();
    return e;
  }
  return ElectronState::from_beta(beta.value_or(0.01));
}

CavityConfig RunConfig::cavity() const {
  const double dd = d.value_or(10e-6);
  if (z && zeta) throw ConfigError("give either geometry/z or geometry/zeta, not both");
  if (zeta) return CavityConfig::from_zeta(dd, *zeta);
  CavityConfig c{dd, z.value_or(dd / 2.0)};
  c.validate();
  return c;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to a line number for the message.
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    std::ostringstream msg;
    msg << "config parse error at line " << line << ": " << e.what();
    throw ConfigError(msg.str());
  }

  require_keys(doc, "", {"model", "geometry", "electron", "numerics", "uncertainty",
                         "figure", "output", "seed", "threads"});

  RunConfig cfg;
  if (doc.contains("model")) cfg.model = parse_model(doc["model"]);

  if (doc.contains("geometry")) {
    const auto& g = doc["geometry"];
    require_keys(g, "geometry", {"d", "z", "zeta", "ring_radius"});
    if (g.contains("d")) cfg.d = get_number(g, "geometry", "d");
    if (g.contains("z")) cfg.z = get_number(g, "geometry", "z");
    if (g.contains("zeta")) cfg.zeta = get_number(g, "geometry", "zeta");
    if (g.contains("ring_radius"))
      cfg.ring_radius = get_number(g, "geometry", "ring_radius");
  }

  if (doc.contains("electron")) {
    const auto& e = doc["electron"];
    require_keys(e, "electron", {"beta", "p_par_sq", "p_perp_sq"});
    if (e.contains("beta")) cfg.beta = get_number(e, "electron", "beta");
    if (e.contains("p_par_sq")) cfg.p_par_sq = get_number(e, "electron", "p_par_sq");
    if (e.contains("p_perp_sq")) cfg.p_perp_sq = get_number(e, "electron", "p_perp_sq");
  }

  if (doc.contains("numerics")) {
    const auto& n = doc["numerics"];
    require_keys(n, "numerics", {"residue", "quadrature", "force_step_rel"});
    if (n.contains("residue")) {
      const auto& r = n["residue"];
      require_keys(r, "numerics/residue",
                   {"radius_fraction", "nodes", "halving_checks", "rel_tol"});
      if (r.contains("radius_fraction"))
        cfg.numerics.residue.radius_fraction =
            get_number(r, "numerics/residue", "radius_fraction");
      if (r.contains("nodes"))
        cfg.numerics.residue.nodes = get_int(r, "numerics/residue", "nodes");
      if (r.contains("halving_checks"))
        cfg.numerics.residue.halving_checks =
            get_int(r, "numerics/residue", "halving_checks");
      if (r.contains("rel_tol"))
        cfg.numerics.residue.rel_tol = get_number(r, "numerics/residue", "rel_tol");
    }
    if (n.contains("quadrature")) {
      const auto& q = n["quadrature"];
      require_keys(q, "numerics/quadrature", {"u_max", "rel_tol", "max_panels"});
      if (q.contains("u_max"))
        cfg.numerics.quadrature.u_max = get_number(q, "numerics/quadrature", "u_max");
      if (q.contains("rel_tol"))
        cfg.numerics.quadrature.rel_tol = get_number(q, "numerics/quadrature", "rel_tol");
      if (q.contains("max_panels"))
        cfg.numerics.quadrature.max_panels =
            get_int(q, "numerics/quadrature", "max_panels");
    }
    if (n.contains("force_step_rel"))
      cfg.numerics.force_step_rel = get_number(n, "numerics", "force_step_rel");
  }

  if (doc.contains("uncertainty")) {
    const auto& u = doc["uncertainty"];
    require_keys(u, "uncertainty",
                 {"sigma_z", "sigma_d", "sigma_r", "field_stability", "mc_samples",
                  "method"});
    if (u.contains("sigma_z")) cfg.budget.sigma_z = get_number(u, "uncertainty", "sigma_z");
    if (u.contains("sigma_d")) cfg.budget.sigma_d = get_number(u, "uncertainty", "sigma_d");
    if (u.contains("sigma_r")) cfg.budget.sigma_r = get_number(u, "uncertainty", "sigma_r");
    if (u.contains("field_stability"))
      cfg.budget.field_stability = get_number(u, "uncertainty", "field_stability");
    if (u.contains("mc_samples"))
      cfg.budget.mc_samples = get_int(u, "uncertainty", "mc_samples");
    if (u.contains("method")) {
      const std::string m = get_string(u, "uncertainty", "method");
      if (m == "first-order")
        cfg.budget.method = experiment::UncertaintyBudget::Method::FirstOrder;
      else if (m == "monte-carlo")
        cfg.budget.method = experiment::UncertaintyBudget::Method::MonteCarlo;
      else
        fail("'uncertainty/method' must be first-order or monte-carlo");
    }
  }

  if (doc.contains("figure")) {
    const auto& f = doc["figure"];
    require_keys(f, "figure", {"beta", "zeta", "positions_z", "working_field"});
    if (f.contains("beta")) cfg.beta_grid = get_grid(f["beta"], "figure/beta");
    if (f.contains("zeta")) cfg.zeta_grid = get_grid(f["zeta"], "figure/zeta");
    if (f.contains("positions_z")) {
      if (!f["positions_z"].is_array()) fail("'figure/positions_z' must be an array");
      std::vector<double> pos;
      for (const auto& v : f["positions_z"]) {
        if (!v.is_number()) fail("'figure/positions_z' entries must be numbers");
        pos.push_back(v.get<double>());
      }
      cfg.positions_z = pos;
    }
    if (f.contains("working_field"))
      cfg.working_field = get_number(f, "figure", "working_field");
  }

  if (doc.contains("output")) {
    const auto& o = doc["output"];
    require_keys(o, "output", {"format", "path", "precision"});
    if (o.contains("format")) {
      cfg.output_format = get_string(o, "output", "format");
      if (cfg.output_format != "csv" && cfg.output_format != "json")
        fail("'output/format' must be csv or json");
    }
    if (o.contains("path")) cfg.output_path = get_string(o, "output", "path");
    if (o.contains("precision")) {
      cfg.precision = get_int(o, "output", "precision");
      if (cfg.precision < 1 || cfg.precision > 17)
        fail("'output/precision' must be in [1, 17]");
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) fail("'seed' must be an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    cfg.threads = get_int(doc, "", "threads");
    if (cfg.threads < 1) fail("'threads' must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace cavshift
