#include "fringe/fit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fringe/errors.hpp"
#include "fringe/minimize.hpp"

namespace fringe {

void validate_dataset(const ExperimentalDataset& data) {
  const auto n = data.xs.size();
  if (data.counts.size() != n || data.sigma.size() != n)
    throw ValidationError("SIZE_MISMATCH", "dataset columns differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(data.xs[i] > data.xs[i - 1]))
      throw ValidationError("NON_MONOTONE_X", "x must be strictly increasing (row " +
                                                  std::to_string(i + 1) + ")");
    if (!(data.counts[i] >= 0.0))
      throw ValidationError("NEGATIVE_COUNT", "counts must be >= 0 (row " + std::to_string(i + 1) + ")");
    if (!(data.sigma[i] > 0.0))
      throw ValidationError("NONPOSITIVE_SIGMA", "sigma must be > 0 (row " + std::to_string(i + 1) + ")");
  }
}

FitParam parse_fit_param(std::string_view text) {
  if (text == "gamma0") return FitParam::gamma0;
  if (text == "Lambda") return FitParam::Lambda;
  if (text == "C_deph") return FitParam::C_deph;
  throw ValidationError("UNKNOWN_PARAM", "fit parameter must be gamma0|Lambda|C_deph");
}

std::string_view to_string(FitParam p) {
  switch (p) {
    case FitParam::gamma0: return "gamma0";
    case FitParam::Lambda: return "Lambda";
    case FitParam::C_deph: return "C_deph";
  }
  return "?";
}

namespace {

const EnvironmentSpec* member_of(const EnvironmentSpec& env, EnvKind kind) {
  if (env.kind == kind) return &env;
  if (env.kind == EnvKind::composite)
    for (const auto& m : env.composite_members)
      if (m.kind == kind) return &m;
  return nullptr;
}

}  // namespace

EnvironmentSpec environment_with(const EnvironmentSpec& base, FitParam param, double value) {
  switch (param) {
    case FitParam::gamma0: {
      const auto* q = member_of(base, EnvKind::qbm_ohmic);
      if (!q) throw ValidationError("MISSING_KBT", "fitting gamma0 needs a qbm_ohmic environment for kBT");
      return EnvironmentSpec::qbm(value, q->kBT, q->include_f);
    }
    case FitParam::Lambda: return EnvironmentSpec::scattering(value);
    case FitParam::C_deph: {
      const auto* d = member_of(base, EnvKind::dephasing);
      return EnvironmentSpec::dephasing(value, 0.0, d ? d->deph_omega : 1.0);
    }
  }
  return base;
}

std::vector<double> farfield_model(const ExperimentGeometry& geom, const EnvironmentSpec& env,
                                   std::span<const double> xs, const FitOptions& options) {
  const auto t_L = geom.flight_time(1.0);
  if (!t_L) throw ValidationError("MISSING_T_L", "fit needs a flight time");
  const double gamma = std::clamp(
      std::abs(overlap_at_flight_time(env, geom.L0, *t_L, options.convention)), 0.0, 1.0);
  const double unit = farfield_intensity(geom, 0.0, 0.0, options.separation);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = farfield_intensity(geom, gamma, xs[i], options.separation) / unit;
  return out;
}

namespace {

struct LinearFit {
  double scale = 0.0, offset = 0.0, sse = 0.0;
};

// Weighted least squares for y ~ a f + b.
LinearFit solve_linear(const ExperimentalDataset& d, const std::vector<double>& f) {
  double sw = 0, sf = 0, sy = 0, sff = 0, sfy = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = 1.0 / (d.sigma[i] * d.sigma[i]);
    sw += w;
    sf += w * f[i];
    sy += w * d.counts[i];
    sff += w * f[i] * f[i];
    sfy += w * f[i] * d.counts[i];
  }
  LinearFit r;
  const double det = sw * sff - sf * sf;
  if (std::abs(det) > 1e-14 * sw * sff) {
    r.scale = (sw * sfy - sf * sy) / det;
    r.offset = (sy - r.scale * sf) / sw;
  } else {
    r.offset = sy / sw;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double res = (d.counts[i] - r.scale * f[i] - r.offset) / d.sigma[i];
    r.sse += res * res;
  }
  return r;
}

}  // namespace

FitResult fit_parameter(const ExperimentalDataset& data, const EnvironmentSpec& base,
                        const ExperimentGeometry& geom, FitParam param, double lo, double hi,
                        const FitOptions& options) {
  validate_dataset(data);
  if (data.xs.size() < 10) throw ValidationError("TOO_FEW_POINTS", "fit needs at least 10 points");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi > lo))
    throw ValidationError("BAD_BOUNDS", "bounds must be finite, positive and increasing");

  auto objective = [&](double p) {
    return solve_linear(data, farfield_model(geom, environment_with(base, param, p), data.xs, options)).sse;
  };
  const auto m = minimize_bounded_log(objective, lo, hi, options.rel_tol);

  FitResult r;
  r.param_name = std::string(to_string(param));
  r.lo = lo;
  r.hi = hi;
  r.n_eval = m.n_eval;
  r.converged = m.converged;
  r.best_value = m.x;

  const double f_lo = objective(lo), f_hi = objective(hi);
  r.n_eval += 2;
  const double f_min = std::min({m.fx, f_lo, f_hi});
  const double f_max = std::max({m.fx, f_lo, f_hi});
  const double edge = 10.0 * options.rel_tol;
  if (f_max - f_min <= 1e-9 * std::max(f_max, 1e-300)) {
    r.flags.push_back("FLAT_OBJECTIVE");
    r.best_value = lo;
  } else if (f_lo <= m.fx || std::log(m.x / lo) < edge) {
    r.flags.push_back("AT_LOWER_BOUND");
    r.best_value = lo;
  } else if (f_hi <= m.fx || std::log(hi / m.x) < edge) {
    r.flags.push_back("AT_UPPER_BOUND");
    r.best_value = hi;
  }

  const auto env = environment_with(base, param, r.best_value);
  const auto shape = farfield_model(geom, env, data.xs, options);
  const auto lin = solve_linear(data, shape);
  r.sse = lin.sse;
  r.scale = lin.scale;
  r.offset = lin.offset;
  r.gamma_tL = overlap_at_flight_time(env, geom.L0, *geom.flight_time(1.0), options.convention);
  r.model.resize(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) r.model[i] = lin.scale * shape[i] + lin.offset;
  return r;
}

ExperimentalDataset synthetic_dataset(const ExperimentGeometry& geom, const EnvironmentSpec& env,
                                      std::span<const double> xs, double scale, double noise_rel,
                                      std::uint64_t seed, const FitOptions& options) {
  if (!(noise_rel > 0.0)) throw ValidationError("BAD_NOISE", "noise level must be > 0");
  const auto shape = farfield_model(geom, env, xs, options);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ExperimentalDataset d;
  d.source = "synthetic";
  d.xs.assign(xs.begin(), xs.end());
  for (double s : shape) {
    const double clean = scale * s;
    d.counts.push_back(std::max(0.0, clean * (1.0 + noise_rel * normal(rng))));
    d.sigma.push_back(std::max(noise_rel * clean, 1e-12 * scale));
  }
  return d;
}

}  // namespace fringe
