#include "fringe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fringe/errors.hpp"

namespace fringe {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where,
                    std::vector<Issue>& issues) {
  if (!obj.is_object()) {
    issues.push_back({"CONFIG_TYPE", where + " must be an object"});
    return;
  }
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) issues.push_back({"UNKNOWN_KEY", "unknown key '" + where + "." + key + "'"});
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ValidationError("CONFIG_TYPE", where + "." + key + " must be a number");
  return v.get<double>();
}

std::optional<double> opt_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key, where);
}

EnvironmentSpec parse_environment(const json& e, const UnitSystem& units, const std::string& where,
                                  std::vector<Issue>& issues) {
  reject_unknown(e,
                 {"kind", "gamma0", "kBT", "temperature_K", "include_f", "Lambda", "deph_A",
                  "deph_B", "deph_omega", "members", "rule"},
                 where, issues);
  EnvironmentSpec env;
  if (!e.contains("kind")) {
    issues.push_back({"MISSING_KEY", where + ".kind is required"});
    return env;
  }
  env.kind = parse_env_kind(e.at("kind").get<std::string>());
  if (auto v = opt_number(e, "gamma0", where)) env.gamma0 = *v;
  if (e.contains("kBT") && e.contains("temperature_K"))
    issues.push_back({"CONFLICTING_KEYS", where + ": give kBT or temperature_K, not both"});
  if (auto v = opt_number(e, "kBT", where)) env.kBT = *v;
  if (auto v = opt_number(e, "temperature_K", where)) env.kBT = units.kB * *v;
  if (e.contains("include_f")) env.include_f = e.at("include_f").get<bool>();
  if (auto v = opt_number(e, "Lambda", where)) env.Lambda = *v;
  if (auto v = opt_number(e, "deph_A", where)) env.deph_A = *v;
  if (auto v = opt_number(e, "deph_B", where)) env.deph_B = *v;
  if (auto v = opt_number(e, "deph_omega", where)) env.deph_omega = *v;
  if (e.contains("rule")) env.composite_rule = parse_composite_rule(e.at("rule").get<std::string>());
  if (e.contains("members")) {
    int i = 0;
    for (const auto& m : e.at("members")) {
      env.composite_members.push_back(
          parse_environment(m, units, where + ".members[" + std::to_string(i++) + "]", issues));
    }
  }
  return env;
}

}  // namespace

Config parse_config(const json& tree) {
  std::vector<Issue> issues;
  Config cfg;
  cfg.raw = tree;
  reject_unknown(tree, {"source", "units", "geometry", "environment", "run"}, "config", issues);
  if (!issues.empty()) throw ValidationError(std::move(issues));

  if (tree.contains("source")) cfg.source = tree.at("source").get<std::string>();

  UnitMode mode = UnitMode::natural;
  if (tree.contains("units")) {
    const auto& u = tree.at("units");
    reject_unknown(u, {"mode"}, "units", issues);
    if (u.contains("mode")) {
      const auto m = u.at("mode").get<std::string>();
      if (m == "si") mode = UnitMode::si;
      else if (m != "natural") issues.push_back({"UNKNOWN_UNIT_MODE", "units.mode must be natural|si"});
    }
  }

  if (!tree.contains("geometry")) {
    issues.push_back({"MISSING_KEY", "geometry section is required"});
    throw ValidationError(std::move(issues));
  }
  const auto& g = tree.at("geometry");
  reject_unknown(g,
                 {"L0", "slit_separation", "sigma_x0", "sigma_y0", "k_y", "L", "lambda_dB", "M", "t_L"},
                 "geometry", issues);
  auto& geom = cfg.geometry;
  if (g.contains("L0") && g.contains("slit_separation"))
    issues.push_back({"CONFLICTING_KEYS", "geometry: give L0 or slit_separation, not both"});
  if (auto v = opt_number(g, "L0", "geometry")) geom.L0 = *v;
  // External separations are full center-to-center distances.
  if (auto v = opt_number(g, "slit_separation", "geometry")) geom.L0 = 0.5 * *v;
  if (auto v = opt_number(g, "sigma_x0", "geometry")) geom.sigma_x0 = *v;
  if (auto v = opt_number(g, "sigma_y0", "geometry")) geom.sigma_y0 = *v;
  if (auto v = opt_number(g, "k_y", "geometry")) geom.k_y = *v;
  geom.L = opt_number(g, "L", "geometry");
  geom.lambda_dB = opt_number(g, "lambda_dB", "geometry");
  geom.t_L = opt_number(g, "t_L", "geometry");
  if (auto v = opt_number(g, "M", "geometry")) geom.M = *v;
  else if (mode == UnitMode::si) issues.push_back({"MISSING_KEY", "geometry.M is required in si mode"});

  cfg.units = mode == UnitMode::si ? UnitSystem::si_for_mass(geom.M) : UnitSystem::natural();

  if (tree.contains("environment")) {
    cfg.environment = parse_environment(tree.at("environment"), cfg.units, "environment", issues);
  }

  if (tree.contains("run")) {
    const auto& r = tree.at("run");
    reject_unknown(r,
                   {"init", "tol", "t_end", "t", "times", "fringe_index", "timescale_convention",
                    "separation_convention"},
                   "run", issues);
    auto& run = cfg.run;
    if (r.contains("init")) run.init = parse_init_convention(r.at("init").get<std::string>());
    if (auto v = opt_number(r, "tol", "run")) run.tol = *v;
    run.t_end = opt_number(r, "t_end", "run");
    run.t = opt_number(r, "t", "run");
    if (r.contains("times")) {
      const auto& ts = r.at("times");
      reject_unknown(ts, {"start", "stop", "count"}, "run.times", issues);
      if (auto v = opt_number(ts, "start", "run.times")) run.times_start = *v;
      run.times_stop = opt_number(ts, "stop", "run.times");
      if (ts.contains("count")) run.times_count = ts.at("count").get<int>();
    }
    if (r.contains("fringe_index")) run.fringe_index = r.at("fringe_index").get<int>();
    if (r.contains("timescale_convention"))
      run.timescale_convention = parse_time_convention(r.at("timescale_convention").get<std::string>());
    if (r.contains("separation_convention"))
      run.separation = parse_separation_convention(r.at("separation_convention").get<std::string>());
  }

  for (auto& issue : geometry_issues(geom, cfg.units)) issues.push_back(std::move(issue));
  try {
    validate_environment(cfg.environment);
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) issues.push_back(issue);
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("CONFIG_NOT_FOUND", "cannot open config '" + path.string() + "'");
  json tree;
  try {
    tree = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("CONFIG_PARSE", std::string("config parse error: ") + e.what());
  }
  try {
    return parse_config(tree);
  } catch (const json::exception& e) {
    throw ValidationError("CONFIG_TYPE", std::string("config type error: ") + e.what());
  }
}

json environment_to_json(const EnvironmentSpec& env) {
  json j;
  j["kind"] = std::string(to_string(env.kind));
  switch (env.kind) {
    case EnvKind::qbm_ohmic:
      j["gamma0"] = env.gamma0;
      j["kBT"] = env.kBT;
      j["include_f"] = env.include_f;
      break;
    case EnvKind::scattering:
      j["Lambda"] = env.Lambda;
      break;
    case EnvKind::dephasing:
      j["deph_A"] = env.deph_A;
      j["deph_B"] = env.deph_B;
      j["deph_omega"] = env.deph_omega;
      break;
    case EnvKind::composite:
      j["rule"] = std::string(to_string(env.composite_rule));
      j["members"] = json::array();
      for (const auto& m : env.composite_members) j["members"].push_back(environment_to_json(m));
      break;
    case EnvKind::isolated:
      break;
  }
  return j;
}

}  // namespace fringe
