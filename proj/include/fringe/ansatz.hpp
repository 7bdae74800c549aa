#pragma once

#include <functional>
#include <string_view>

#include "fringe/environment.hpp"
#include "fringe/geometry.hpp"

namespace fringe {

/// Gaussian-ansatz coefficients of the single-packet density matrix
///   rho(x, x', t) = exp(-traceLog - A u^2 - i B u v - C v^2),  u = x - x', v = x + x'.
/// A sets the coherence range, C the ensemble extension, B the quadratic phase.
struct AnsatzState {
  double t = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double traceLog = 0.0;
};

struct AnsatzRates {
  double dA = 0.0;
  double dB = 0.0;
  double dC = 0.0;
  double dTraceLog = 0.0;
};

/// physical: pure Gaussian of width sigma_x0 (A = C = 1/(8 sigma^2)).
/// paper: A = C = 1 regardless of the width.
enum class InitConvention { physical, paper };
InitConvention parse_init_convention(std::string_view text);
std::string_view to_string(InitConvention c);

/// Trace of the single-packet density matrix, exp(-traceLog) * sqrt(pi / C) / 2.
double single_packet_trace(const AnsatzState& s);

/// traceLog that makes the single-packet trace equal to one for the given C.
double unit_trace_log(double C);

AnsatzState initial_state(const ExperimentGeometry& geom, InitConvention convention);

/// Coefficient ODE obtained by inserting the ansatz into the master equation
/// (hbar = M = 1). With u = x - x', v = x + x' the master equation reads
///   d_t rho = 2i d_u d_v rho - (D/4) u^2 rho - 2 gamma u d_u rho + 4 i f u d_v rho,
/// the last term carrying the imaginary unit that keeps the ansatz hermitian.
/// Matching the u^2, uv, v^2 and constant terms gives
///   dA/dt = 4AB - 4 gamma A + D/4 - 4 f B
///   dB/dt = 2B^2 - 8AC - 2 gamma B + 8 f C
///   dC/dt = 4BC
///   d(traceLog)/dt = -2B
AnsatzRates coefficient_derivatives(const AnsatzState& s, const DerivedCoefficients& k);

using DerivativeFn = std::function<AnsatzRates(const AnsatzState&, const DerivedCoefficients&)>;

/// Exact isolated evolution of a pure Gaussian of initial width sigma0.
AnsatzState free_gaussian_reference(double sigma0, double t);

}  // namespace fringe
