#include "fringe/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fringe/errors.hpp"
#include "fringe/parallel.hpp"

namespace fringe {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw ValidationError("GAMMA_OUT_OF_RANGE", "overlap factor must lie in [0, 1]");
}

}  // namespace

Normalization parse_normalization(std::string_view text) {
  if (text == "raw") return Normalization::raw;
  if (text == "unit_peak") return Normalization::unit_peak;
  if (text == "unit_area") return Normalization::unit_area;
  throw ValidationError("UNKNOWN_NORMALIZATION", "normalization must be raw|unit_peak|unit_area");
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::raw: return "raw";
    case Normalization::unit_peak: return "unit_peak";
    case Normalization::unit_area: return "unit_area";
  }
  return "?";
}

SeparationConvention parse_separation_convention(std::string_view text) {
  if (text == "half_L0") return SeparationConvention::half_L0;
  if (text == "full_2L0") return SeparationConvention::full_2L0;
  throw ValidationError("UNKNOWN_CONVENTION", "separation convention must be half_L0|full_2L0");
}

std::string_view to_string(SeparationConvention c) {
  return c == SeparationConvention::half_L0 ? "half_L0" : "full_2L0";
}

std::complex<double> density_matrix(const AnsatzState& s, double L0, double x, double xp) {
  using cplx = std::complex<double>;
  constexpr cplx I{0.0, 1.0};
  const double u = x - xp, v = x + xp;
  const cplx base = -s.A * u * u - I * s.B * u * v - s.C * v * v - s.traceLog;
  // 2 e^{-4L0^2 C} cosh(z1) + 2 e^{-4L0^2 A} cosh(z2), written as exponentials
  const cplx z1 = 4.0 * L0 * s.C * v + 2.0 * I * L0 * s.B * u;
  const cplx z2 = 4.0 * L0 * s.A * u + 2.0 * I * L0 * s.B * v;
  const double c1 = -4.0 * L0 * L0 * s.C;
  const double c2 = -4.0 * L0 * L0 * s.A;
  return std::exp(base + c1 + z1) + std::exp(base + c1 - z1) + std::exp(base + c2 + z2) +
         std::exp(base + c2 - z2);
}

double intensity_log_prefactor(const AnsatzState& s, double L0) {
  return std::log(2.0) - s.traceLog - 8.0 * s.C * L0 * L0;
}

double intensity(const AnsatzState& s, double L0, double gamma, double x) {
  check_gamma(gamma);
  // exp(-N~) e^{-4C(x^2 - L0^2)} cosh(8 C L0 x) rewritten as two Gaussians
  // centered at +-L0 to stay finite for large C L0 x.
  const double pre = std::log(2.0) - s.traceLog;
  const double a = x - L0, b = x + L0;
  const double packets = 0.5 * (std::exp(pre - 4.0 * s.C * a * a) + std::exp(pre - 4.0 * s.C * b * b));
  const double fringe =
      gamma * std::exp(pre - 4.0 * s.C * (x * x + L0 * L0)) * std::cos(4.0 * s.B * L0 * x);
  return packets + fringe;
}

std::vector<double> default_grid(const AnsatzState& s, double L0, int points) {
  const double sigma = std::sqrt(1.0 / (8.0 * s.C));
  const double half = L0 + 6.0 * sigma;
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xs[i] = -half + 2.0 * half * i / (points - 1);
  return xs;
}

double trapezoid(std::span<const double> xs, std::span<const double> ys) {
  double sum = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) sum += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
  return sum;
}

void normalize(IntensityProfile& profile, Normalization normalization) {
  profile.normalization = normalization;
  double scale = 1.0;
  if (normalization == Normalization::unit_peak) {
    const double peak = *std::max_element(profile.values.begin(), profile.values.end());
    if (peak > 0.0) scale = 1.0 / peak;
  } else if (normalization == Normalization::unit_area) {
    const double area = trapezoid(profile.xs, profile.values);
    if (area > 0.0) scale = 1.0 / area;
  }
  if (scale != 1.0)
    for (auto& v : profile.values) v *= scale;
}

IntensityProfile intensity_profile(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                   double t, std::span<const double> grid,
                                   Normalization normalization) {
  const AnsatzState s = traj.at(t);
  IntensityProfile profile;
  profile.t = t;
  profile.model = std::string(to_string(env.kind));
  profile.gamma_used = model_overlap(traj, env, L0, t);
  const double gamma = profile.gamma_used.value;
  check_gamma(gamma);
  profile.xs.assign(grid.begin(), grid.end());
  profile.values.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { profile.values[i] = intensity(s, L0, gamma, grid[i]); });
  if (!grid.empty()) {
    const double sigma_t = std::sqrt(1.0 / (8.0 * s.C));
    const double need = L0 + 4.0 * sigma_t;
    profile.grid_too_narrow = grid.front() > -need || grid.back() < need;
  }
  normalize(profile, normalization);
  return profile;
}

IntensityProfile intensity_profile(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                   double t, Normalization normalization) {
  const auto grid = default_grid(traj.at(t), L0);
  return intensity_profile(traj, env, L0, t, grid, normalization);
}

ExperimentCoefficients coefficients_from_experiment(const ExperimentGeometry& geom) {
  if (!geom.L || !geom.lambda_dB)
    throw ValidationError("MISSING_OPTICS", "L and lambda_dB are required");
  const double lambda_L = *geom.lambda_dB * *geom.L;
  ExperimentCoefficients c;
  c.B_exp = 2.0 * std::numbers::pi / lambda_L;
  const double k = 2.0 * std::numbers::sqrt2 * std::numbers::pi * geom.sigma_x0 / lambda_L;
  c.C_exp = k * k;
  const double t_L = *geom.flight_time(1.0);
  c.far_field_ratio = t_L / (geom.M * geom.sigma_x0 * geom.L0);
  c.far_field_warning = c.far_field_ratio < 10.0;
  return c;
}

double farfield_intensity(const ExperimentGeometry& geom, double gamma_tL, double x,
                          SeparationConvention convention) {
  check_gamma(gamma_tL);
  if (!geom.L || !geom.lambda_dB)
    throw ValidationError("MISSING_OPTICS", "L and lambda_dB are required");
  const double lambda_L = *geom.lambda_dB * *geom.L;
  const double pi = std::numbers::pi;
  const double sep = convention == SeparationConvention::half_L0 ? geom.L0 : 2.0 * geom.L0;
  const double k = 2.0 * std::numbers::sqrt2 * pi * geom.sigma_x0 * x / lambda_L;
  const double prefactor = 8.0 * pi * geom.sigma_x0 * geom.sigma_x0 / lambda_L;
  return prefactor * std::exp(-k * k) * (1.0 + gamma_tL * std::cos(2.0 * pi * sep * x / lambda_L));
}

IntensityProfile farfield_profile(const ExperimentGeometry& geom, double gamma_tL,
                                  std::span<const double> xs, SeparationConvention convention,
                                  Normalization normalization) {
  IntensityProfile profile;
  profile.t = geom.t_L.value_or(0.0);
  profile.model = "farfield";
  profile.gamma_used.value = gamma_tL;
  profile.xs.assign(xs.begin(), xs.end());
  profile.values.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    profile.values[i] = farfield_intensity(geom, gamma_tL, xs[i], convention);
  });
  normalize(profile, normalization);
  return profile;
}

}  // namespace fringe
