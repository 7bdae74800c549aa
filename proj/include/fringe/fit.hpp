#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fringe/pattern.hpp"
#include "fringe/timescales.hpp"

namespace fringe {

/// Screen data. xs strictly increasing (SI metres on disk; the fit itself
/// takes them in the units of the geometry it is given), counts >= 0.
struct ExperimentalDataset {
  std::vector<double> xs;
  std::vector<double> counts;
  std::vector<double> sigma;
  std::string source;
};

/// Throws ValidationError for size mismatches, non-increasing x, negative
/// counts or non-positive sigma.
void validate_dataset(const ExperimentalDataset& data);

enum class FitParam { gamma0, Lambda, C_deph };
FitParam parse_fit_param(std::string_view text);
std::string_view to_string(FitParam p);

struct FitOptions {
  TimeConvention convention = TimeConvention::slope;
  SeparationConvention separation = SeparationConvention::full_2L0;
  double rel_tol = 1e-6;
};

struct FitResult {
  std::string param_name;
  double best_value = 0.0;
  double sse = 0.0;
  int n_eval = 0;
  double lo = 0.0;
  double hi = 0.0;
  double scale = 0.0;
  double offset = 0.0;
  double gamma_tL = 0.0;
  bool converged = false;
  /// AT_LOWER_BOUND, AT_UPPER_BOUND, FLAT_OBJECTIVE.
  std::vector<std::string> flags;
  std::vector<double> model;  // fitted model at the data points
};

/// Environment with the fitted parameter set to `value`; other fields come
/// from `base` (kBT for gamma0).
EnvironmentSpec environment_with(const EnvironmentSpec& base, FitParam param, double value);

/// Far-field shape (unit envelope at x = 0) for the parameter value.
std::vector<double> farfield_model(const ExperimentGeometry& geom, const EnvironmentSpec& env,
                                   std::span<const double> xs, const FitOptions& options);

/// Minimizes the weighted SSE of scale * shape + offset against the counts
/// over one parameter in [lo, hi]; scale and offset are solved linearly per
/// evaluation. Natural units throughout.
FitResult fit_parameter(const ExperimentalDataset& data, const EnvironmentSpec& base,
                        const ExperimentGeometry& geom, FitParam param, double lo, double hi,
                        const FitOptions& options = {});

/// counts = scale * shape * (1 + noise_rel * N(0, 1)), clipped at 0, with
/// sigma = noise_rel * scale * shape; mt19937_64 seeded with `seed`.
ExperimentalDataset synthetic_dataset(const ExperimentGeometry& geom, const EnvironmentSpec& env,
                                      std::span<const double> xs, double scale, double noise_rel,
                                      std::uint64_t seed, const FitOptions& options = {});

}  // namespace fringe
