#pragma once

#include <functional>

namespace fringe {

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  int n_eval = 0;
  bool converged = false;
};

/// Brent's bounded minimizer (golden section with parabolic steps) on [lo, hi].
/// Stops when the bracket shrinks below rel_tol * |x| + abs_tol.
MinimizeResult minimize_bounded(const std::function<double(double)>& f, double lo, double hi,
                                double rel_tol = 1e-6, double abs_tol = 1e-12,
                                int max_iter = 500);

/// Same search in ln(x) when lo > 0, so the bracket criterion is relative.
MinimizeResult minimize_bounded_log(const std::function<double(double)>& f, double lo, double hi,
                                    double rel_tol = 1e-6, int max_iter = 500);

}  // namespace fringe
