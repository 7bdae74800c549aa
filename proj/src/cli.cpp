#include "fringe/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "fringe/config.hpp"
#include "fringe/errors.hpp"
#include "fringe/fit.hpp"
#include "fringe/io.hpp"
#include "fringe/manifest.hpp"
#include "fringe/overlap.hpp"
#include "fringe/parallel.hpp"
#include "fringe/pattern.hpp"
#include "fringe/timescales.hpp"
#include "fringe/visibility.hpp"

namespace fringe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  unsigned threads = 0;
  std::uint64_t seed = 42;
  std::string env = "config";
  std::string init;
  std::optional<double> t;
  std::optional<double> t_end;
  std::optional<double> tol;
  std::optional<double> t_start, t_stop;
  std::optional<int> count;
  std::optional<int> fringe_index;
  std::string convention;
  std::string separation;
  std::string normalization = "raw";
  int points = 2001;
  bool farfield = false;
  int samples = 4096;
  std::string param = "gamma0";
  std::optional<double> lo, hi;
  std::string data;
  std::optional<double> true_value;
  double noise = 0.01;
};

struct Context {
  const Options& opt;
  Config cfg;
  ExperimentGeometry geom;  // natural
  EnvironmentSpec env;      // natural, after --env selection
  RunManifest manifest;
  fs::path out;
};

std::string quoted(std::string s) {
  for (auto& c : s)
    if (c == '"' || c == '\n') c = '\'';
  return s;
}

// Picks the requested model out of the config environment.
EnvironmentSpec select_env(const EnvironmentSpec& env, const std::string& which) {
  if (which == "config") return env;
  if (which == "isolated") return EnvironmentSpec::isolated();
  const EnvKind kind = parse_env_kind(which);
  if (env.kind == kind) return env;
  if (env.kind == EnvKind::composite)
    for (const auto& m : env.composite_members)
      if (m.kind == kind) return m;
  throw ValidationError("ENV_NOT_IN_CONFIG", "config has no '" + which + "' environment");
}

std::optional<EnvironmentSpec> find_member(const EnvironmentSpec& env, EnvKind kind) {
  if (env.kind == kind) return env;
  if (env.kind == EnvKind::composite)
    for (const auto& m : env.composite_members)
      if (m.kind == kind) return m;
  return std::nullopt;
}

TimeConvention time_convention(const Context& c) {
  return c.opt.convention.empty() ? c.cfg.run.timescale_convention
                                  : parse_time_convention(c.opt.convention);
}

SeparationConvention separation(const Context& c) {
  return c.opt.separation.empty() ? c.cfg.run.separation
                                  : parse_separation_convention(c.opt.separation);
}

InitConvention init_convention(const Context& c) {
  return c.opt.init.empty() ? c.cfg.run.init : parse_init_convention(c.opt.init);
}

double run_tol(const Context& c) { return c.opt.tol.value_or(c.cfg.run.tol); }

// Flight time in seconds, if known.
std::optional<double> flight_time(const Context& c) { return c.geom.flight_time(1.0); }

Trajectory simulate_to(const Context& c, double t_end) {
  const auto s0 = initial_state(c.geom, init_convention(c));
  return integrate(s0, c.env, t_end, run_tol(c));
}

void emit(Context& c, const std::string& stem, const CsvTable& table, const json& j) {
  const bool as_json = c.opt.format == "json";
  const fs::path path = c.out / (stem + (as_json ? ".json" : ".csv"));
  write_text(path, as_json ? j.dump(2) + "\n" : to_csv(table));
  c.manifest.outputs.push_back(path.filename().string());
}

void emit_report(Context& c, const std::string& stem, const json& j) {
  const bool as_json = c.opt.format == "json";
  const fs::path path = c.out / (stem + (as_json ? ".json" : ".csv"));
  write_text(path, as_json ? j.dump(2) + "\n" : json_to_kv_csv(j));
  c.manifest.outputs.push_back(path.filename().string());
}

json table_json(const CsvTable& t) {
  json j;
  for (std::size_t k = 0; k < t.header.size(); ++k) {
    json col = json::array();
    for (const auto& row : t.rows) col.push_back(row[k]);
    j[t.header[k]] = col;
  }
  return j;
}

// ---- subcommands ----------------------------------------------------------

void cmd_simulate(Context& c) {
  const double t_end = c.opt.t_end ? *c.opt.t_end
                       : c.cfg.run.t_end ? *c.cfg.run.t_end
                       : flight_time(c).value_or(1.0);
  const auto traj = simulate_to(c, t_end);
  auto tj = trajectory_json(traj);
  tj["environment"] = environment_to_json(c.env);
  tj["config"] = c.cfg.raw;
  emit(c, "trajectory", trajectory_table(traj), tj);

  std::vector<double> times;
  for (const auto& s : traj.samples()) times.push_back(s.t);
  const auto ot = overlap_trace(traj, c.env, c.geom.L0, times);
  const auto table = overlap_table(ot);
  emit(c, "overlap", table, table_json(table));
}

std::vector<double> screen_grid(const Context& c, double t, const Trajectory* traj) {
  if (traj) return default_grid(traj->at(t), c.geom.L0, c.opt.points);
  // Far field: four envelope widths either side.
  const auto k = coefficients_from_experiment(c.geom);
  const double half = 4.0 / std::sqrt(k.C_exp);
  std::vector<double> xs(c.opt.points);
  for (int i = 0; i < c.opt.points; ++i) xs[i] = -half + 2.0 * half * i / (c.opt.points - 1);
  return xs;
}

void to_external(const Context& c, IntensityProfile& p) {
  if (c.cfg.units.mode != UnitMode::si) return;
  const double ell = c.cfg.units.length_unit();
  for (auto& x : p.xs) x *= ell;
  if (p.normalization == Normalization::raw)
    for (auto& v : p.values) v /= ell;
  else if (p.normalization == Normalization::unit_area)
    for (auto& v : p.values) v /= ell;
}

void cmd_pattern(Context& c) {
  const auto tL = flight_time(c);
  const double t = c.opt.t ? *c.opt.t : c.cfg.run.t ? *c.cfg.run.t : tL.value_or(0.0);
  if (!(t > 0.0)) throw ValidationError("MISSING_T", "give --t or a flight time");
  const auto norm = parse_normalization(c.opt.normalization);
  IntensityProfile profile;
  std::string convention;
  if (c.opt.farfield) {
    const double gamma =
        overlap_at_flight_time(c.env, c.geom.L0, t, time_convention(c));
    const auto xs = screen_grid(c, t, nullptr);
    profile = farfield_profile(c.geom, gamma, xs, separation(c), norm);
    profile.t = t;
    convention = std::string(to_string(separation(c)));
    const auto k = coefficients_from_experiment(c.geom);
    if (k.far_field_warning)
      std::cerr << "warning code=FAR_FIELD_RATIO message=\"ratio " << format_number(k.far_field_ratio)
                << " < 10\"\n";
  } else {
    const auto traj = simulate_to(c, t);
    const auto xs = screen_grid(c, t, &traj);
    profile = intensity_profile(traj, c.env, c.geom.L0, t, xs, norm);
    convention = "dynamical";
  }
  if (profile.grid_too_narrow)
    std::cerr << "warning code=GRID_TOO_NARROW message=\"grid narrower than L0 + 4 sigma_t\"\n";
  to_external(c, profile);
  emit(c, "profile", profile_table(profile, convention), profile_json(profile, convention));
}

void cmd_visibility(Context& c) {
  const auto& run = c.cfg.run;
  const double start = c.opt.t_start.value_or(run.times_start);
  const double stop = c.opt.t_stop   ? *c.opt.t_stop
                      : run.times_stop ? *run.times_stop
                      : run.t_end      ? *run.t_end
                                       : flight_time(c).value_or(1.0);
  const int count = c.opt.count.value_or(run.times_count);
  if (count < 2 || !(stop > start))
    throw ValidationError("BAD_TIMES", "need count >= 2 and stop > start");
  std::vector<double> times(count);
  for (int i = 0; i < count; ++i) times[i] = start + (stop - start) * i / (count - 1);
  const auto traj = simulate_to(c, stop);
  const auto trace = visibility_trace(traj, c.env, c.geom.L0,
                                      c.opt.fringe_index.value_or(run.fringe_index), times);
  emit(c, "visibility", visibility_table(trace), visibility_json(trace));
}

json optional_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void cmd_timescales(Context& c) {
  const auto& units = c.cfg.units;
  const auto slope = decoherence_time(c.env, c.geom, TimeConvention::slope);
  const auto sec4 = decoherence_time(c.env, c.geom, TimeConvention::section_iv);
  json j;
  j["t_D_slope"] = slope.t_D ? optional_number(*slope.t_D) : json(nullptr);
  j["t_D_section_iv"] = sec4.t_D ? optional_number(*sec4.t_D) : json(nullptr);
  j["t_Lambda"] = slope.t_Lambda ? optional_number(*slope.t_Lambda) : json(nullptr);
  j["t_Lambda_efold"] = slope.t_Lambda_efold ? optional_number(*slope.t_Lambda_efold) : json(nullptr);
  j["pre_transient"] = slope.pre_transient;
  j["convention"] = std::string(to_string(time_convention(c)));
  json bounds = {{"gamma0_max", nullptr}, {"Lambda_max", nullptr}};
  if (const auto tL = flight_time(c)) {
    if (const auto q = find_member(c.env, EnvKind::qbm_ohmic))
      bounds["gamma0_max"] = gamma0_bound(q->kBT, c.geom.L0, *tL, time_convention(c));
    bounds["Lambda_max"] = units.area_rate_from_natural(lambda_bound(c.geom.L0, *tL));
    j["t_L"] = *tL;
  }
  j["bounds"] = bounds;
  emit_report(c, "timescales", j);
}

void cmd_bounds(Context& c) {
  const auto tL = flight_time(c);
  if (!tL) throw ValidationError("MISSING_T_L", "bounds need t_L or L and lambda_dB");
  const auto conv = time_convention(c);
  json j;
  j["convention"] = std::string(to_string(conv));
  j["t_L"] = *tL;
  j["L0"] = c.cfg.units.length_from_natural(c.geom.L0);
  const auto q = find_member(c.env, EnvKind::qbm_ohmic);
  if (q) {
    j["kBT"] = c.cfg.units.energy_from_natural(q->kBT);
    j["gamma0_max"] = gamma0_bound(q->kBT, c.geom.L0, *tL, conv);
  } else {
    j["gamma0_max"] = nullptr;
  }
  j["Lambda_max"] = c.cfg.units.area_rate_from_natural(lambda_bound(c.geom.L0, *tL));
  emit_report(c, "bounds", j);
}

void cmd_dephasing(Context& c) {
  const auto d = find_member(c.env, EnvKind::dephasing);
  if (!d) throw ValidationError("ENV_NOT_IN_CONFIG", "config has no dephasing environment");
  const double gamma_c = dephasing_factor(d->deph_A, d->deph_B);
  const auto avg = dephasing_average_oracle(d->deph_A, d->deph_B, d->deph_omega, c.opt.samples);
  json j = {{"deph_A", d->deph_A},
            {"deph_B", d->deph_B},
            {"modulus", d->dephasing_modulus()},
            {"Gamma_C", gamma_c},
            {"oracle_real", avg.real},
            {"oracle_imag", avg.imag},
            {"abs_diff", std::abs(avg.real - gamma_c)},
            {"n_samples", c.opt.samples}};
  emit_report(c, "dephasing", j);
}

void cmd_fit(Context& c) {
  const auto param = parse_fit_param(c.opt.param);
  if (!c.opt.lo || !c.opt.hi) throw ValidationError("MISSING_BOUNDS", "fit needs --lo and --hi");
  const auto& units = c.cfg.units;
  // Bounds arrive in external units.
  auto to_nat = [&](double v) {
    return param == FitParam::Lambda ? units.area_rate_to_natural(v) : v;
  };
  FitOptions fo;
  fo.convention = time_convention(c);
  fo.separation = separation(c);

  ExperimentalDataset data;
  if (!c.opt.data.empty()) {
    const auto bytes = read_text(c.opt.data);
    c.manifest.inputs.push_back({c.opt.data, sha256_hex(bytes)});
    data = parse_dataset(bytes);
  } else {
    if (!c.opt.true_value) throw ValidationError("MISSING_DATA", "give --data or --true-value");
    const auto env = environment_with(c.env, param, to_nat(*c.opt.true_value));
    const auto k = coefficients_from_experiment(c.geom);
    const double half = 3.0 / std::sqrt(k.C_exp);
    std::vector<double> xs(c.opt.points);
    for (int i = 0; i < c.opt.points; ++i) xs[i] = -half + 2.0 * half * i / (c.opt.points - 1);
    data = synthetic_dataset(c.geom, env, xs, 1000.0, c.opt.noise, c.opt.seed, fo);
    for (auto& x : data.xs) x = units.length_from_natural(x);
  }
  ExperimentalDataset nat = data;
  for (auto& x : nat.xs) x = units.length_to_natural(x);
  auto fit = fit_parameter(nat, c.env, c.geom, param, to_nat(*c.opt.lo), to_nat(*c.opt.hi), fo);
  if (param == FitParam::Lambda) {
    fit.best_value = units.area_rate_from_natural(fit.best_value);
    fit.lo = *c.opt.lo;
    fit.hi = *c.opt.hi;
  }
  auto j = fit_json(fit);
  j["source"] = data.source;
  j["convention"] = std::string(to_string(fo.convention));
  emit_report(c, "fit", j);
  const auto table = residual_table(data, fit);
  emit(c, "residuals", table, table_json(table));
}

}  // namespace

int run_cli(int argc, char** argv) {
  Options opt;
  CLI::App app{"fringeworks: two-slit decoherence simulator"};
  app.set_version_flag("--version", std::string(FRINGEWORKS_VERSION));
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Config file")->required();
    sub->add_option("--out", opt.out_dir, "Output directory (default ./out or $FRINGEWORKS_OUT)");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    sub->add_option("--seed", opt.seed, "Seed for synthetic noise");
    sub->add_option("--env", opt.env, "config|isolated|qbm_ohmic|scattering|dephasing|composite");
    sub->add_option("--init", opt.init, "physical|paper");
    sub->add_option("--tol", opt.tol, "Integrator tolerance");
    sub->add_option("--convention", opt.convention, "slope|section_iv");
    sub->add_option("--separation", opt.separation, "half_L0|full_2L0");
  };

  auto* simulate = app.add_subcommand("simulate", "Integrate the ansatz coefficients");
  common(simulate);
  simulate->add_option("--t-end", opt.t_end, "End time");

  auto* pattern = app.add_subcommand("pattern", "Screen intensity at one time");
  common(pattern);
  pattern->add_option("--t", opt.t, "Time (default t_L)");
  pattern->add_option("--normalization", opt.normalization, "raw|unit_peak|unit_area");
  pattern->add_option("--points", opt.points, "Grid points")->check(CLI::Range(5, 10'000'000));
  pattern->add_flag("--farfield", opt.farfield, "Use the far-screen closed form");

  auto* visibility = app.add_subcommand("visibility", "Visibility trace");
  common(visibility);
  visibility->add_option("--t-start", opt.t_start);
  visibility->add_option("--t-stop", opt.t_stop);
  visibility->add_option("--count", opt.count);
  visibility->add_option("--fringe-index", opt.fringe_index);

  auto* timescales = app.add_subcommand("timescales", "Decoherence timescales");
  common(timescales);
  auto* bounds = app.add_subcommand("bounds", "Environment-parameter bounds at t_L");
  common(bounds);
  auto* dephasing = app.add_subcommand("dephasing", "Dephasing factor with oracle check");
  common(dephasing);
  dephasing->add_option("--samples", opt.samples)->check(CLI::Range(1000, 100'000'000));

  auto* fit = app.add_subcommand("fit", "Fit one environment parameter to far-field data");
  common(fit);
  fit->add_option("--param", opt.param, "gamma0|Lambda|C_deph");
  fit->add_option("--lo", opt.lo);
  fit->add_option("--hi", opt.hi);
  fit->add_option("--data", opt.data, "CSV x,count[,sigma] (x in metres for si configs)");
  fit->add_option("--true-value", opt.true_value, "Generate synthetic data at this value");
  fit->add_option("--noise", opt.noise, "Relative noise of synthetic data");
  fit->add_option("--points", opt.points, "Synthetic data points")->check(CLI::Range(10, 10'000'000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error code=USAGE message=\"" << quoted(e.what()) << "\"\n";
    return 1;
  }

  try {
    if (opt.out_dir.empty()) {
      const char* env_out = std::getenv("FRINGEWORKS_OUT");
      opt.out_dir = env_out && *env_out ? env_out : "./out";
    }
    set_thread_count(opt.threads);

    const auto bytes = read_text(opt.config_path);
    json tree;
    try {
      tree = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw ValidationError("CONFIG_PARSE", std::string("config parse error: ") + e.what());
    }
    Config cfg;
    try {
      cfg = parse_config(tree);
    } catch (const json::exception& e) {
      throw ValidationError("CONFIG_TYPE", std::string("config type error: ") + e.what());
    }

    Context c{opt, cfg, cfg.natural_geometry(),
              select_env(cfg.natural_environment(), opt.env), {}, fs::path(opt.out_dir)};
    c.manifest.config = cfg.raw;
    c.manifest.inputs.push_back({opt.config_path, sha256_hex(bytes)});
    fs::create_directories(c.out);

    const auto* sub = app.get_subcommands().front();
    c.manifest.command = sub->get_name();
    if (sub == simulate) cmd_simulate(c);
    else if (sub == pattern) cmd_pattern(c);
    else if (sub == visibility) cmd_visibility(c);
    else if (sub == timescales) cmd_timescales(c);
    else if (sub == bounds) cmd_bounds(c);
    else if (sub == dephasing) cmd_dephasing(c);
    else if (sub == fit) cmd_fit(c);

    c.manifest.timestamp = utc_timestamp();
    write_text(c.out / (c.manifest.command + ".manifest.json"), c.manifest.to_json().dump(2) + "\n");
    return 0;
  } catch (const ValidationError& e) {
    std::string msg;
    for (const auto& issue : e.issues()) msg += (msg.empty() ? "" : "; ") + issue.message;
    std::cerr << "error code=" << e.code() << " message=\"" << quoted(msg) << "\"\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error code=" << e.code() << " message=\"" << quoted(e.what()) << "\"\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error code=IO message=\"" << quoted(e.what()) << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error code=INTERNAL message=\"" << quoted(e.what()) << "\"\n";
    return 2;
  }
}

}  // namespace fringe
