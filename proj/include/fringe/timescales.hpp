#pragma once

#include <optional>
#include <string_view>

#include "fringe/environment.hpp"
#include "fringe/geometry.hpp"

namespace fringe {

/// slope: t_D = hbar^2 / (D L0^2), the 1/e time of the short-time decay.
/// section_iv: t_D = 12 hbar^2 / (M gamma0 kBT L0^2), used for the experiment bounds.
/// The two differ by a factor 24.
enum class TimeConvention { slope, section_iv };
TimeConvention parse_time_convention(std::string_view text);
std::string_view to_string(TimeConvention c);

/// All times in seconds; +infinity when the coupling is zero.
struct TimescaleReport {
  std::optional<double> t_D;
  std::optional<double> t_Lambda;        // 3 / (Lambda L0^2)
  std::optional<double> t_Lambda_efold;  // 1 / (Lambda L0^2)
  TimeConvention convention = TimeConvention::slope;
  double pre_transient = 0.0;
};

/// Natural units (hbar = M = 1). Accepts qbm, scattering, or a composite
/// holding them; other members are ignored.
TimescaleReport decoherence_time(const EnvironmentSpec& env, const ExperimentGeometry& geom,
                                 TimeConvention convention);

double decoherence_time_qbm(double gamma0, double kBT, double L0, TimeConvention convention);
double decoherence_time_scattering(double Lambda, double L0);

/// Largest gamma0 with t_D(gamma0) >= t_L.
double gamma0_bound(double kBT, double L0, double t_L, TimeConvention convention);
/// Largest Lambda with t_Lambda(Lambda) >= t_L.
double lambda_bound(double L0, double t_L);

/// Gamma at the flight time from the closed forms: exp(-t_L / t_D) for qbm;
/// for scattering exp(-Lambda L0^2 t_L) under slope and exp(-t_L / t_Lambda)
/// under section_iv; J0(|C|) for dephasing; composites combined by their rule.
double overlap_at_flight_time(const EnvironmentSpec& env, double L0, double t_L,
                              TimeConvention convention);

}  // namespace fringe
