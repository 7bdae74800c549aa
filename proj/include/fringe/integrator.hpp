#pragma once

#include <vector>

#include "fringe/ansatz.hpp"
#include "fringe/dopri5.hpp"

namespace fringe {

inline constexpr double kMinTolerance = 1e-12;
inline constexpr double kMaxTolerance = 1e-3;

/// Accepted samples of an adaptive integration plus the interpolant of every
/// step. Immutable once returned by `integrate`.
class Trajectory {
 public:
  Trajectory(std::vector<AnsatzState> samples, std::vector<dopri5::DenseSegment<4>> segments,
             EnvironmentSpec env, DerivedCoefficients coefficients, double tol,
             double pre_transient);

  const std::vector<AnsatzState>& samples() const noexcept { return samples_; }
  const EnvironmentSpec& env() const noexcept { return env_; }
  const DerivedCoefficients& coefficients() const noexcept { return coefficients_; }
  double tol() const noexcept { return tol_; }
  double t_begin() const noexcept { return samples_.front().t; }
  double t_end() const noexcept { return samples_.back().t; }
  const AnsatzState& front() const noexcept { return samples_.front(); }
  const AnsatzState& back() const noexcept { return samples_.back(); }

  /// Times below this are inside the high-temperature positivity transient.
  double pre_transient() const noexcept { return pre_transient_; }
  bool is_pre_transient(double t) const noexcept { return t < pre_transient_; }

  bool contains(double t) const noexcept { return t >= t_begin() && t <= t_end(); }
  /// State at any t in the span; exact at sample times. Throws out of span.
  AnsatzState at(double t) const;

 private:
  std::vector<AnsatzState> samples_;
  std::vector<dopri5::DenseSegment<4>> segments_;
  EnvironmentSpec env_;
  DerivedCoefficients coefficients_;
  double tol_;
  double pre_transient_;
};

struct IntegrateOptions {
  double tol = 1e-9;
  /// Initial step; chosen automatically when <= 0.
  double h0 = 0.0;
  long max_steps = 10'000'000;
  /// Replaces the ansatz ODE; used only to probe the residual oracle.
  DerivativeFn derivative;
};

/// Integrates the ansatz coefficients from s0 to t_end under `coefficients`
/// (natural units). `env` is recorded for downstream overlap evaluation.
Trajectory integrate(const AnsatzState& s0, const EnvironmentSpec& env,
                     const DerivedCoefficients& coefficients, double t_end,
                     const IntegrateOptions& options = {}, double pre_transient = 0.0);

/// Convenience overload: environment in natural units, coefficients derived.
Trajectory integrate(const AnsatzState& s0, const EnvironmentSpec& env, double t_end,
                     double tol = 1e-9);

}  // namespace fringe
