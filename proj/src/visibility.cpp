#include "fringe/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "fringe/errors.hpp"
#include "fringe/parallel.hpp"

namespace fringe {

namespace {

// Index into entries of the requested maximum, or -1.
long locate_max(const ExtremaList& ex, int fringe_index) {
  std::vector<std::size_t> maxima;
  for (std::size_t k = 0; k < ex.entries.size(); ++k)
    if (ex.entries[k].kind == ExtremumKind::max) maxima.push_back(k);
  if (maxima.empty()) return -1;
  std::size_t center = 0;
  for (std::size_t m = 1; m < maxima.size(); ++m) {
    if (closer_to_origin(ex.entries[maxima[m]].x, ex.entries[maxima[center]].x)) center = m;
  }
  const long target = static_cast<long>(center) + fringe_index;
  if (target < 0 || target >= static_cast<long>(maxima.size())) return -1;
  return static_cast<long>(maxima[target]);
}

}  // namespace

double fringe_position(const ExtremaList& extrema, int fringe_index) {
  const long k = locate_max(extrema, fringe_index);
  if (k < 0) throw ValidationError("MISSING_FRINGE", "requested maximum does not exist");
  return extrema.entries[k].x;
}

double fringe_visibility(const ExtremaList& extrema, int fringe_index) {
  const long k = locate_max(extrema, fringe_index);
  if (k < 0) throw ValidationError("MISSING_FRINGE", "requested maximum does not exist");
  const auto& e = extrema.entries;
  const bool left = k > 0, right = k + 1 < static_cast<long>(e.size());
  if (!left && !right) throw ValidationError("MISSING_FRINGE", "maximum has no adjacent minimum");
  double i_min;
  if (left && right) i_min = 0.5 * (e[k - 1].I + e[k + 1].I);
  else i_min = left ? e[k - 1].I : e[k + 1].I;
  const double i_max = e[k].I;
  const double nu = (i_max - i_min) / (i_max + i_min);
  return std::clamp(nu, 0.0, 1.0);
}

double fringe_visibility(const IntensityProfile& profile, int fringe_index) {
  return fringe_visibility(find_extrema(profile), fringe_index);
}

VisibilityTrace visibility_trace(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                 int fringe_index, std::span<const double> times) {
  for (double t : times)
    if (!traj.contains(t)) throw ValidationError("T_OUT_OF_SPAN", "trace time outside trajectory");

  // Profiles are independent; evaluate them concurrently, then scan in order.
  struct Sample {
    double nu = 0.0, gamma = 0.0;
    bool found = false;
  };
  std::vector<Sample> samples(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const auto profile = intensity_profile(traj, env, L0, times[i], Normalization::raw);
    samples[i].gamma = profile.gamma_used.value;
    try {
      samples[i].nu = fringe_visibility(profile, fringe_index);
      samples[i].found = true;
    } catch (const ValidationError&) {
    }
  });

  VisibilityTrace trace;
  trace.fringe_index = fringe_index;
  trace.model = std::string(to_string(env.kind));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!samples[i].found) {
      if (trace.times.empty()) {
        trace.not_formed.push_back(times[i]);
        continue;
      }
      trace.stop_reason = "FRINGE_LOST";
      trace.stop_time = times[i];
      break;
    }
    trace.times.push_back(times[i]);
    trace.nu_values.push_back(samples[i].nu);
    trace.gamma_values.push_back(samples[i].gamma);
  }
  return trace;
}

double visibility_theoretical(double gamma, double C_t, double L0, double x) {
  return gamma / std::cosh(8.0 * L0 * C_t * x);
}

}  // namespace fringe
