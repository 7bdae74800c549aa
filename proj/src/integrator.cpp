#include "fringe/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fringe/errors.hpp"

namespace fringe {

namespace {

using V4 = dopri5::Vec<4>;

V4 pack(const AnsatzState& s) { return {s.A, s.B, s.C, s.traceLog}; }

AnsatzState unpack(double t, const V4& y) { return {t, y[0], y[1], y[2], y[3]}; }

std::string describe(const AnsatzState& s) {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << s.t << " A=" << s.A << " B=" << s.B << " C=" << s.C << " traceLog=" << s.traceLog;
  return os.str();
}

template <class F>
double initial_step(F& f, double t0, const V4& y0, const V4& f0, double tol, double span) {
  auto scaled = [&](const V4& v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double q = v[i] / (tol + tol * std::abs(y0[i]));
      sum += q * q;
    }
    return std::sqrt(sum / 4.0);
  };
  const double d0 = scaled(y0);
  const double d1 = scaled(f0);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  V4 y1;
  for (std::size_t i = 0; i < 4; ++i) y1[i] = y0[i] + h0 * f0[i];
  const V4 f1 = f(t0 + h0, y1);
  V4 df;
  for (std::size_t i = 0; i < 4; ++i) df[i] = f1[i] - f0[i];
  const double d2 = scaled(df) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

Trajectory::Trajectory(std::vector<AnsatzState> samples,
                       std::vector<dopri5::DenseSegment<4>> segments, EnvironmentSpec env,
                       DerivedCoefficients coefficients, double tol, double pre_transient)
    : samples_(std::move(samples)),
      segments_(std::move(segments)),
      env_(std::move(env)),
      coefficients_(coefficients),
      tol_(tol),
      pre_transient_(pre_transient) {}

AnsatzState Trajectory::at(double t) const {
  if (!contains(t)) {
    std::ostringstream os;
    os.precision(17);
    os << "t=" << t << " outside trajectory span [" << t_begin() << ", " << t_end() << "]";
    throw ValidationError("T_OUT_OF_SPAN", os.str());
  }
  // First sample with time >= t.
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const AnsatzState& s, double v) { return s.t < v; });
  if (it != samples_.end() && it->t == t) return *it;
  const auto idx = static_cast<std::size_t>(it - samples_.begin());
  const auto& seg = segments_[idx - 1];
  return unpack(t, seg(t));
}

Trajectory integrate(const AnsatzState& s0, const EnvironmentSpec& env,
                     const DerivedCoefficients& coefficients, double t_end,
                     const IntegrateOptions& options, double pre_transient) {
  const double tol = options.tol;
  if (!(tol >= kMinTolerance && tol <= kMaxTolerance))
    throw ValidationError("TOL_OUT_OF_RANGE", "tolerance must lie in [1e-12, 1e-3]");
  if (!(t_end >= s0.t))
    throw ValidationError("T_END_BEFORE_START", "t_end must not precede the initial time");
  if (!(s0.A > 0.0 && s0.C > 0.0))
    throw ValidationError("INVALID_INITIAL_STATE", "initial A and C must be positive");

  std::vector<AnsatzState> samples{s0};
  std::vector<dopri5::DenseSegment<4>> segments;
  if (t_end == s0.t)
    return Trajectory(std::move(samples), std::move(segments), env, coefficients, tol, pre_transient);

  const DerivativeFn& custom = options.derivative;
  auto f = [&](double t, const V4& y) -> V4 {
    const AnsatzState s = unpack(t, y);
    const AnsatzRates r = custom ? custom(s, coefficients) : coefficient_derivatives(s, coefficients);
    return {r.dA, r.dB, r.dC, r.dTraceLog};
  };

  double t = s0.t;
  V4 y = pack(s0);
  V4 k1 = f(t, y);
  const double span = t_end - t;
  double h = options.h0 > 0.0 ? std::min(options.h0, span) : initial_step(f, t, y, k1, tol, span);
  dopri5::PIController controller;
  bool last_rejected = false;
  const double eps = std::numeric_limits<double>::epsilon();

  for (long n = 0; t < t_end; ++n) {
    if (n >= options.max_steps)
      throw NumericalError("MAX_STEPS", "step budget exhausted at " + describe(unpack(t, y)));
    if (h <= 16.0 * eps * std::max(std::abs(t), std::abs(span)))
      throw NumericalError("STEP_UNDERFLOW", "step size underflow at " + describe(unpack(t, y)));
    bool final_step = false;
    if (t + h >= t_end || t_end - (t + h) <= 16.0 * eps * std::abs(t_end)) {
      h = t_end - t;
      final_step = true;
    }
    auto trial = dopri5::step<4>(f, t, y, k1, h);
    const double err = dopri5::error_norm<4>(trial.err, y, trial.y1, tol, tol);
    if (!std::isfinite(err)) {
      h *= 0.2;
      last_rejected = true;
      continue;
    }
    if (err <= 1.0) {
      const double t_new = final_step ? t_end : t + h;
      const AnsatzState s = unpack(t_new, trial.y1);
      if (!(s.A > 0.0 && s.C > 0.0))
        throw NumericalError("INVARIANT_VIOLATION", "A or C left the positive domain at " + describe(s));
      samples.push_back(s);
      segments.push_back(trial.dense);
      t = t_new;
      y = trial.y1;
      k1 = trial.k7;
      double fac = controller.accept(err);
      if (last_rejected) fac = std::min(fac, 1.0);
      h *= fac;
      last_rejected = false;
    } else {
      h *= controller.reject(err, last_rejected);
      last_rejected = true;
    }
  }
  return Trajectory(std::move(samples), std::move(segments), env, coefficients, tol, pre_transient);
}

Trajectory integrate(const AnsatzState& s0, const EnvironmentSpec& env, double t_end, double tol) {
  const auto natural = UnitSystem::natural();
  IntegrateOptions options;
  options.tol = tol;
  return integrate(s0, env, dynamics_coefficients(env, natural), t_end, options,
                   pre_transient_of(env, natural));
}

}  // namespace fringe
