#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta with the order-4 continuous
// extension of Hairer, Norsett & Wanner (DOPRI5).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace fringe::dopri5 {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace tableau {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace tableau

/// Interpolation data of one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec<N>, 5> r{};

  Vec<N> operator()(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
    return y;
  }
};

/// Result of a single trial step: fifth-order solution, embedded error
/// estimate (already multiplied by h), final stage for FSAL, dense data.
template <std::size_t N>
struct StepResult {
  Vec<N> y1;
  Vec<N> err;
  Vec<N> k7;
  DenseSegment<N> dense;
};

template <std::size_t N, class F>
StepResult<N> step(F&& f, double t, const Vec<N>& y, const Vec<N>& k1, double h) {
  using namespace tableau;
  Vec<N> k2, k3, k4, k5, k6, tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  k2 = f(t + c2 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  k3 = f(t + c3 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  k4 = f(t + c4 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  k5 = f(t + c5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  k6 = f(t + h, tmp);

  StepResult<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out.y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
  out.k7 = f(t + h, out.y1);
  for (std::size_t i = 0; i < N; ++i)
    out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.k7[i]);

  auto& d = out.dense;
  d.t0 = t;
  d.h = h;
  for (std::size_t i = 0; i < N; ++i) {
    const double dy = out.y1[i] - y[i];
    const double bspl = h * k1[i] - dy;
    d.r[0][i] = y[i];
    d.r[1][i] = dy;
    d.r[2][i] = bspl;
    d.r[3][i] = dy - h * out.k7[i] - bspl;
    d.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * out.k7[i]);
  }
  return out;
}

/// RMS error norm with mixed absolute/relative scaling.
template <std::size_t N>
double error_norm(const Vec<N>& err, const Vec<N>& y0, const Vec<N>& y1, double atol, double rtol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<double>(N));
}

/// Non-adaptive integration with `steps` equal steps; used to check the order.
template <std::size_t N, class F>
Vec<N> fixed_step(F&& f, double t0, Vec<N> y, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  Vec<N> k1 = f(t0, y);
  for (int n = 0; n < steps; ++n) {
    auto r = step<N>(f, t0 + n * h, y, k1, h);
    y = r.y1;
    k1 = r.k7;
  }
  return y;
}

/// PI step-size controller: safety 0.9, growth clamped to [0.2, 5].
struct PIController {
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double beta = 0.04;
  double alpha = 0.2 - 0.75 * 0.04;
  double err_old = 1e-4;

  /// Factor for the next step after an accepted step with error `err`.
  double accept(double err) {
    err = std::max(err, 1e-10);
    double fac = safety * std::pow(err, -alpha) * std::pow(err_old, beta);
    err_old = std::max(err, 1e-4);
    return std::clamp(fac, min_factor, max_factor);
  }
  /// Factor for the retry after a rejected step.
  double reject(double err, bool after_reject) const {
    const double fac = safety * std::pow(err, -alpha);
    return std::clamp(fac, min_factor, after_reject ? 1.0 : max_factor);
  }
};

}  // namespace fringe::dopri5
