#pragma once

#include <span>
#include <string>
#include <vector>

#include "fringe/extrema.hpp"
#include "fringe/pattern.hpp"

namespace fringe {

/// nu = (Imax - Imin) / (Imax + Imin) at the fringe_index-th maximum counted
/// from the maximum nearest x = 0 (0 = that maximum, 1 = the next one out on
/// the x >= 0 side). Imin is the mean of both adjacent minima when both exist.
/// Throws ValidationError("MISSING_FRINGE") when the max or its minima are absent.
double fringe_visibility(const ExtremaList& extrema, int fringe_index);
double fringe_visibility(const IntensityProfile& profile, int fringe_index);

/// Position of the maximum fringe_visibility uses.
double fringe_position(const ExtremaList& extrema, int fringe_index);

struct VisibilityTrace {
  std::vector<double> times;
  std::vector<double> nu_values;
  /// Overlap factor at the same times, for reference.
  std::vector<double> gamma_values;
  int fringe_index = 1;
  std::string model;
  /// Leading times at which the tracked fringe had not yet formed.
  std::vector<double> not_formed;
  /// Empty, or FRINGE_LOST when the fringe disappeared after being seen.
  std::string stop_reason;
  double stop_time = 0.0;
};

/// Builds the profile at every t (default grid) and tracks the fringe with a
/// fixed index. Times must lie in the trajectory span.
VisibilityTrace visibility_trace(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                                 int fringe_index, std::span<const double> times);

/// Gamma / cosh(8 L0 C_t x); with Gamma = J0(|C|) this is the dephasing form.
double visibility_theoretical(double gamma, double C_t, double L0, double x);

}  // namespace fringe
