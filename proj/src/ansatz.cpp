#include "fringe/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "fringe/errors.hpp"

namespace fringe {

InitConvention parse_init_convention(std::string_view text) {
  if (text == "physical") return InitConvention::physical;
  if (text == "paper") return InitConvention::paper;
  throw ValidationError("UNKNOWN_INIT", "init convention must be physical|paper");
}

std::string_view to_string(InitConvention c) {
  return c == InitConvention::physical ? "physical" : "paper";
}

double single_packet_trace(const AnsatzState& s) {
  return std::exp(-s.traceLog) * 0.5 * std::sqrt(std::numbers::pi / s.C);
}

double unit_trace_log(double C) { return std::log(0.5 * std::sqrt(std::numbers::pi / C)); }

AnsatzState initial_state(const ExperimentGeometry& geom, InitConvention convention) {
  AnsatzState s;
  if (convention == InitConvention::physical) {
    if (!(geom.sigma_x0 > 0.0))
      throw ValidationError("NONPOSITIVE_SIGMA_X0", "sigma_x0 must be strictly positive");
    s.A = s.C = 1.0 / (8.0 * geom.sigma_x0 * geom.sigma_x0);
  } else {
    s.A = s.C = 1.0;
  }
  s.traceLog = unit_trace_log(s.C);
  return s;
}

AnsatzRates coefficient_derivatives(const AnsatzState& s, const DerivedCoefficients& k) {
  const double A = s.A, B = s.B, C = s.C;
  return {
      4.0 * A * B - 4.0 * k.gamma * A + 0.25 * k.D - 4.0 * k.f * B,
      2.0 * B * B - 8.0 * A * C - 2.0 * k.gamma * B + 8.0 * k.f * C,
      4.0 * B * C,
      -2.0 * B,
  };
}

AnsatzState free_gaussian_reference(double sigma0, double t) {
  if (!(sigma0 > 0.0)) throw ValidationError("NONPOSITIVE_SIGMA", "sigma0 must be > 0");
  const double s02 = sigma0 * sigma0;
  const double st2 = s02 + t * t / (4.0 * s02);
  AnsatzState s;
  s.t = t;
  s.A = s.C = 1.0 / (8.0 * st2);
  s.B = -t / (8.0 * s02 * st2);
  s.traceLog = unit_trace_log(s.C);
  return s;
}

}  // namespace fringe
