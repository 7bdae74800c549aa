#pragma once

namespace fringe {

/// Bessel function of the first kind, order zero. Absolute error below 1e-12
/// for all finite x: power series for |x| <= 8, Miller backward recurrence for
/// 8 < |x| <= 25, Hankel asymptotic expansion beyond.
double bessel_j0(double x);

}  // namespace fringe
