#include "fringe/extrema.hpp"

#include <algorithm>
#include <cmath>

#include "fringe/errors.hpp"

namespace fringe {

namespace {

// Vertex of the parabola through three points; falls back to the middle point.
Extremum refine(std::span<const double> xs, std::span<const double> ys, std::size_t i) {
  Extremum e{xs[i], ys[i]};
  if (i == 0 || i + 1 >= xs.size()) return e;
  const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double a = (d12 - d01) / (x2 - x0);
  if (a == 0.0) return e;
  const double b = d01 - a * (x0 + x1);
  const double xv = -b / (2.0 * a);
  if (!(xv >= x0 && xv <= x2)) return e;
  e.x = xv;
  e.I = y1 + (xv - x1) * (d01 + a * (xv - x0));
  return e;
}

}  // namespace

bool closer_to_origin(double a, double b) {
  const double da = std::abs(a), db = std::abs(b);
  if (std::abs(da - db) <= 1e-9 * std::max(da, db)) return a > 0 && b <= 0;
  return da < db;
}

ExtremaList find_extrema(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw ValidationError("SIZE_MISMATCH", "xs and values differ in length");
  if (xs.size() < 5) throw ValidationError("TOO_FEW_POINTS", "profile needs at least 5 points");
  const double peak = *std::max_element(ys.begin(), ys.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  const double flat = 1e-14 * std::abs(peak);

  ExtremaList out;
  int prev_sign = 0;
  std::size_t run_start = 0;  // first point after the last nonzero difference
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const double d = ys[i + 1] - ys[i];
    const int sign = std::abs(d) <= flat ? 0 : (d > 0 ? 1 : -1);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign) {
      Extremum e;
      if (run_start == i) {
        e = refine(xs, ys, i);
      } else {
        // plateau spanning points run_start .. i
        e.x = 0.5 * (xs[run_start] + xs[i]);
        e.I = 0.5 * (ys[run_start] + ys[i]);
      }
      e.kind = prev_sign > 0 ? ExtremumKind::max : ExtremumKind::min;
      out.entries.push_back(e);
    }
    prev_sign = sign;
    run_start = i + 1;
  }

  if (!out.entries.empty()) {
    std::size_t center = 0;
    for (std::size_t k = 1; k < out.entries.size(); ++k) {
      if (closer_to_origin(out.entries[k].x, out.entries[center].x)) center = k;
    }
    for (std::size_t k = 0; k < out.entries.size(); ++k)
      out.entries[k].fringe_index = static_cast<int>(k) - static_cast<int>(center);
  }
  return out;
}

ExtremaList find_extrema(const IntensityProfile& profile) {
  return find_extrema(profile.xs, profile.values);
}

}  // namespace fringe
