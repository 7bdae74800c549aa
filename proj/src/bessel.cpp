#include "fringe/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fringe {

namespace {

double series(double x) {
  // sum_k (-1)^k (x/2)^{2k} / (k!)^2, accumulated in extended precision
  const long double q = -0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 4) break;
  }
  return static_cast<double>(sum);
}

double miller(double x) {
  // Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
  // 1 = J_0 + 2 sum_{k>=1} J_{2k}.
  int start = static_cast<int>(x + 30.0 + 3.0 * std::sqrt(x));
  if (start % 2) ++start;
  long double next = 0.0L;  // J_{k+1}
  long double cur = 1e-30L;  // J_k
  long double norm = 0.0L;
  for (int k = start; k >= 1; --k) {
    const long double prev = (2.0L * k / x) * cur - next;
    next = cur;
    cur = prev;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * cur;
    if (std::abs(cur) > 1e250L) {
      cur *= 1e-250L;
      next *= 1e-250L;
      norm *= 1e-250L;
    }
  }
  norm += cur;
  return static_cast<double>(cur / norm);
}

double hankel(double x) {
  // J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4))
  double p = 0.0, q = 0.0;
  double term = 1.0;
  const double z = 8.0 * x;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= -odd * odd / (k * z);
    }
    if (std::abs(term) > last) break;
    last = std::abs(term);
    // term_k = prod_{j<=k} (-(2j-1)^2) / (k! (8x)^k); P takes even k, Q odd k
    // with alternating signs (-1)^{floor(k/2)}.
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) p += sign * term;
    else q += sign * term;
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x <= 8.0) return series(x);
  if (x <= 25.0) return miller(x);
  return hankel(x);
}

}  // namespace fringe
