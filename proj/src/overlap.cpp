#include "fringe/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fringe/bessel.hpp"
#include "fringe/errors.hpp"

namespace fringe {

OverlapValue overlap_from_state(const AnsatzState& s, double L0) {
  const double diff = s.A - s.C;
  OverlapValue g;
  g.value = std::exp(-4.0 * L0 * L0 * diff);
  g.unphysical = diff < 0.0 && g.value > 1.0;
  return g;
}

OverlapValue overlap_qbm(const Trajectory& traj, double L0, double t) {
  return overlap_from_state(traj.at(t), L0);
}

double overlap_scattering(double Lambda, double L0, double t) {
  return std::exp(-Lambda * L0 * L0 * t);
}

double dephasing_factor(double deph_A, double deph_B) {
  return bessel_j0(std::hypot(deph_A, deph_B));
}

DephasingAverage dephasing_average_oracle(double deph_A, double deph_B, double omega,
                                          int n_samples) {
  if (!(omega > 0.0)) throw ValidationError("NONPOSITIVE_OMEGA", "omega must be > 0");
  if (n_samples < 1000) throw ValidationError("TOO_FEW_SAMPLES", "need at least 1000 samples");
  // Periodic integrand: the trapezoid rule over one full period reduces to
  // the mean over n equispaced nodes.
  const double period = 2.0 * std::numbers::pi / omega;
  std::complex<double> sum = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double t0 = period * j / n_samples;
    const double phase = deph_A * std::cos(omega * t0) + deph_B * std::sin(omega * t0);
    sum += std::polar(1.0, phase);
  }
  sum /= static_cast<double>(n_samples);
  return {sum.real(), sum.imag()};
}

OverlapValue composite_overlap(std::span<const double> members, CompositeRule rule) {
  if (members.empty()) throw ValidationError("COMPOSITE_EMPTY", "no member overlap factors");
  OverlapValue g;
  switch (rule) {
    case CompositeRule::paper_sum: {
      double sum = 0.0;
      for (double m : members) sum += m;
      g.saturated = sum > 1.0;
      g.value = std::min(1.0, sum);
      break;
    }
    case CompositeRule::product: {
      double prod = 1.0;
      for (double m : members) prod *= m;
      g.value = prod;
      break;
    }
    case CompositeRule::max:
      g.value = *std::max_element(members.begin(), members.end());
      break;
  }
  return g;
}

OverlapValue model_overlap(const Trajectory& traj, const EnvironmentSpec& env, double L0, double t) {
  switch (env.kind) {
    case EnvKind::isolated:
    case EnvKind::qbm_ohmic:
      return overlap_qbm(traj, L0, t);
    case EnvKind::scattering:
      if (!traj.contains(t)) traj.at(t);  // span check
      return {overlap_scattering(env.Lambda, L0, t - traj.t_begin()), false, false};
    case EnvKind::dephasing:
      return {dephasing_factor(env.deph_A, env.deph_B), false, false};
    case EnvKind::composite: {
      std::vector<double> values;
      bool unphysical = false;
      for (const auto& m : env.composite_members) {
        const auto g = model_overlap(traj, m, L0, t);
        unphysical = unphysical || g.unphysical;
        values.push_back(g.value);
      }
      auto g = composite_overlap(values, env.composite_rule);
      g.unphysical = unphysical;
      return g;
    }
  }
  return {};
}

OverlapTrace overlap_trace(const Trajectory& traj, const EnvironmentSpec& env, double L0,
                           std::span<const double> times) {
  OverlapTrace trace;
  trace.model = env;
  for (double t : times) {
    trace.times.push_back(t);
    trace.gamma_values.push_back(model_overlap(traj, env, L0, t));
  }
  return trace;
}

}  // namespace fringe
