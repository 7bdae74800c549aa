#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fringe/integrator.hpp"

namespace fringe {

enum class PacketLayout { single, two };

using GridPoint = std::pair<double, double>;

/// n x n uniform grid over [-(L0 + 6 sigma), L0 + 6 sigma]^2, sigma = sqrt(1/(8C)).
std::vector<GridPoint> residual_grid(const AnsatzState& s, double L0, int n = 21);

/// Max over the grid of |d_t rho - RHS[rho]| / max |RHS[rho]|, where d_t rho is
/// taken through the coefficient rates returned by `derivative` (the ansatz
/// ODE when empty) and RHS is the master equation evaluated with exact
/// analytic derivatives in x and x'. For `two` the density matrix is the
/// superposition of ansatz copies centered at +-L0 including the cross terms.
double master_equation_residual(const AnsatzState& s, const DerivedCoefficients& k,
                                std::span<const GridPoint> grid, double L0, PacketLayout layout,
                                const DerivativeFn& derivative = {});

double master_equation_residual(const Trajectory& traj, double t, std::span<const GridPoint> grid,
                                double L0, PacketLayout layout, const DerivativeFn& derivative = {});

}  // namespace fringe
