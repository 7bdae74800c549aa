#pragma once

#include <span>
#include <string>
#include <vector>

#include "fringe/integrator.hpp"

namespace fringe {

/// Overlap factor multiplying the interference term. `unphysical` marks
/// Gamma > 1 (A < C); `saturated` marks a clamped composite sum.
struct OverlapValue {
  double value = 1.0;
  bool unphysical = false;
  bool saturated = false;
};

/// exp(-4 L0^2 (A - C)) from an ansatz state.
OverlapValue overlap_from_state(const AnsatzState& s, double L0);
OverlapValue overlap_qbm(const Trajectory& traj, double L0, double t);

/// exp(-Lambda L0^2 t), squared separation taken as L0^2.
double overlap_scattering(double Lambda, double L0, double t);

/// J0(|A + iB|), constant in time.
double dephasing_factor(double deph_A, double deph_B);

struct DephasingAverage {
  double real = 0.0;
  double imag = 0.0;
};

/// Period average of exp(i [A cos(w t0) + B sin(w t0)]) over t0 by the
/// trapezoid rule with n_samples nodes; an independent check of the J0 form.
DephasingAverage dephasing_average_oracle(double deph_A, double deph_B, double omega,
                                          int n_samples);

/// Combines member factors: paper_sum = min(1, sum) (flagged when clamped),
/// product, or max.
OverlapValue composite_overlap(std::span<const double> members, CompositeRule rule);

/// Gamma of any environment model at time t, with the ansatz dynamics taken
/// from `traj` (natural units). qbm and isolated read A - C off the trajectory.
OverlapValue model_overlap(const Trajectory& traj, const EnvironmentSpec& env, double L0, double t);

struct OverlapTrace {
  std::vector<double> times;
  std::vector<OverlapValue> gamma_values;
  EnvironmentSpec model;
};

OverlapTrace overlap_trace(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                           std::span<const double> times);

}  // namespace fringe
