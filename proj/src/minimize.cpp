#include "fringe/minimize.hpp"

#include <cmath>

#include "fringe/errors.hpp"

namespace fringe {

MinimizeResult minimize_bounded(const std::function<double(double)>& f, double lo, double hi,
                                double rel_tol, double abs_tol, int max_iter) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw ValidationError("BAD_BOUNDS", "bounds must be finite with lo < hi");
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  double a = lo, b = hi;
  double x = a + golden * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  MinimizeResult r;
  r.n_eval = 1;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = rel_tol * std::abs(x) + abs_tol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
      r.converged = true;
      break;
    }
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      const double r1 = (x - w) * (fx - fv);
      const double q1 = (x - v) * (fx - fw);
      double p = (x - v) * q1 - (x - w) * r1;
      double q = 2.0 * (q1 - r1);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x < m ? b : a) - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    ++r.n_eval;
    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w, fv = fw;
      w = x, fw = fx;
      x = u, fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w, fv = fw;
        w = u, fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u, fv = fu;
      }
    }
  }
  r.x = x;
  r.fx = fx;
  return r;
}

MinimizeResult minimize_bounded_log(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol, int max_iter) {
  if (!(lo > 0.0)) throw ValidationError("BAD_BOUNDS", "log search needs lo > 0");
  auto g = [&](double s) { return f(std::exp(s)); };
  auto r = minimize_bounded(g, std::log(lo), std::log(hi), 0.0, rel_tol / 4.0, max_iter);
  r.x = std::exp(r.x);
  return r;
}

}  // namespace fringe
