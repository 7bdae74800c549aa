#pragma once

#include <vector>

#include "fringe/pattern.hpp"

namespace fringe {

enum class ExtremumKind { max, min };

struct Extremum {
  double x = 0.0;
  double I = 0.0;
  ExtremumKind kind = ExtremumKind::max;
  /// Signed position in the list relative to the extremum nearest x = 0.
  int fringe_index = 0;
};

/// Interior extrema in increasing x; kinds alternate.
struct ExtremaList {
  std::vector<Extremum> entries;
};

/// True when a is nearer x = 0 than b. Mirror-image positions (equal up to
/// round-off) count as a tie, which goes to the positive side.
bool closer_to_origin(double a, double b);

/// Sign changes of the discrete first difference, refined by a three-point
/// parabola. Runs with |dP| < 1e-14 max P are plateaus and collapse to their
/// midpoint. Needs at least 5 points.
ExtremaList find_extrema(const IntensityProfile& profile);
ExtremaList find_extrema(std::span<const double> xs, std::span<const double> values);

}  // namespace fringe
