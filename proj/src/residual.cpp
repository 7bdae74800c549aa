#include "fringe/residual.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "fringe/errors.hpp"

namespace fringe {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Q(x, x') = qxx x^2 + qxy x x' + qyy x'^2 + lx x + ly x' + c
struct Quadratic {
  cplx qxx, qxy, qyy, lx, ly, c;

  cplx value(double x, double y) const { return qxx * x * x + qxy * x * y + qyy * y * y + lx * x + ly * y + c; }
  cplx dx(double x, double y) const { return 2.0 * qxx * x + qxy * y + lx; }
  cplx dy(double x, double y) const { return qxy * x + 2.0 * qyy * y + ly; }
};

// Exponents of every Gaussian term of the ansatz. All entries are linear in
// (A, B, C, N), so the same builder applied to the rates yields d/dt of each
// exponent.
std::vector<Quadratic> exponents(double A, double B, double C, double N, double L0,
                                 PacketLayout layout) {
  const Quadratic base{-A - I * B - C, 2.0 * A - 2.0 * C, -A + I * B - C, 0.0, 0.0, -N};
  if (layout == PacketLayout::single) return {base};
  std::vector<Quadratic> terms;
  // 2 exp(-4 L0^2 C) cosh(z) = sum over +-z of exp(+-z - 4 L0^2 C)
  const cplx l1x = 4.0 * L0 * C + 2.0 * I * L0 * B;
  const cplx l1y = 4.0 * L0 * C - 2.0 * I * L0 * B;
  const cplx l2x = 4.0 * L0 * A + 2.0 * I * L0 * B;
  const cplx l2y = -4.0 * L0 * A + 2.0 * I * L0 * B;
  for (double sign : {1.0, -1.0}) {
    Quadratic diag = base;
    diag.lx = sign * l1x;
    diag.ly = sign * l1y;
    diag.c = -N - 4.0 * L0 * L0 * C;
    terms.push_back(diag);
    Quadratic cross = base;
    cross.lx = sign * l2x;
    cross.ly = sign * l2y;
    cross.c = -N - 4.0 * L0 * L0 * A;
    terms.push_back(cross);
  }
  return terms;
}

}  // namespace

std::vector<GridPoint> residual_grid(const AnsatzState& s, double L0, int n) {
  const double sigma = std::sqrt(1.0 / (8.0 * s.C));
  const double half = L0 + 6.0 * sigma;
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = n == 1 ? 0.0 : -half + 2.0 * half * i / (n - 1);
      const double y = n == 1 ? 0.0 : -half + 2.0 * half * j / (n - 1);
      grid.emplace_back(x, y);
    }
  return grid;
}

double master_equation_residual(const AnsatzState& s, const DerivedCoefficients& k,
                                std::span<const GridPoint> grid, double L0, PacketLayout layout,
                                const DerivativeFn& derivative) {
  if (grid.empty()) throw ValidationError("GRID_EMPTY", "residual grid has no points");
  const AnsatzRates r = derivative ? derivative(s, k) : coefficient_derivatives(s, k);
  const auto q = exponents(s.A, s.B, s.C, s.traceLog, L0, layout);
  const auto qt = exponents(r.dA, r.dB, r.dC, r.dTraceLog, L0, layout);

  double max_res = 0.0;
  double max_rhs = 0.0;
  for (const auto& [x, y] : grid) {
    const double u = x - y;
    cplx lrho = 0.0;
    cplx res = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) {
      const cplx e = std::exp(q[n].value(x, y));
      const cplx qx = q[n].dx(x, y);
      const cplx qy = q[n].dy(x, y);
      const cplx laplace_x = 2.0 * q[n].qxx + qx * qx;
      const cplx laplace_y = 2.0 * q[n].qyy + qy * qy;
      // i/2 (d_x^2 - d_x'^2) - D/4 u^2 - gamma u (d_x - d_x') + 2 i f u (d_x + d_x')
      const cplx rhs = 0.5 * I * (laplace_x - laplace_y) - 0.25 * k.D * u * u -
                       k.gamma * u * (qx - qy) + 2.0 * I * k.f * u * (qx + qy);
      res += e * (qt[n].value(x, y) - rhs);
      lrho += e * rhs;
    }
    max_res = std::max(max_res, std::abs(res));
    max_rhs = std::max(max_rhs, std::abs(lrho));
  }
  return max_rhs > 0.0 ? max_res / max_rhs : max_res;
}

double master_equation_residual(const Trajectory& traj, double t, std::span<const GridPoint> grid,
                                double L0, PacketLayout layout, const DerivativeFn& derivative) {
  return master_equation_residual(traj.at(t), traj.coefficients(), grid, L0, layout, derivative);
}

}  // namespace fringe
