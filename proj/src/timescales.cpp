#include "fringe/timescales.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "fringe/errors.hpp"
#include "fringe/overlap.hpp"

namespace fringe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TimeConvention parse_time_convention(std::string_view text) {
  if (text == "slope") return TimeConvention::slope;
  if (text == "section_iv") return TimeConvention::section_iv;
  throw ValidationError("UNKNOWN_CONVENTION", "timescale convention must be slope|section_iv");
}

std::string_view to_string(TimeConvention c) {
  return c == TimeConvention::slope ? "slope" : "section_iv";
}

double decoherence_time_qbm(double gamma0, double kBT, double L0, TimeConvention convention) {
  const double rate = gamma0 * kBT * L0 * L0;
  if (rate == 0.0) return kInf;
  return convention == TimeConvention::slope ? 1.0 / (2.0 * rate) : 12.0 / rate;
}

double decoherence_time_scattering(double Lambda, double L0) {
  const double rate = Lambda * L0 * L0;
  return rate == 0.0 ? kInf : 3.0 / rate;
}

TimescaleReport decoherence_time(const EnvironmentSpec& env, const ExperimentGeometry& geom,
                                 TimeConvention convention) {
  TimescaleReport report;
  report.convention = convention;
  auto visit = [&](const EnvironmentSpec& e) {
    if (e.kind == EnvKind::qbm_ohmic) {
      report.t_D = decoherence_time_qbm(e.gamma0, e.kBT, geom.L0, convention);
      report.pre_transient = positivity_transient(e, UnitSystem::natural());
    } else if (e.kind == EnvKind::scattering) {
      report.t_Lambda = decoherence_time_scattering(e.Lambda, geom.L0);
      const double rate = e.Lambda * geom.L0 * geom.L0;
      report.t_Lambda_efold = rate == 0.0 ? kInf : 1.0 / rate;
    }
  };
  if (env.kind == EnvKind::composite) {
    for (const auto& m : env.composite_members) visit(m);
  } else {
    visit(env);
  }
  if (!report.t_D && !report.t_Lambda)
    throw ValidationError("UNSUPPORTED_KIND", "timescales need a qbm_ohmic or scattering environment");
  return report;
}

double gamma0_bound(double kBT, double L0, double t_L, TimeConvention convention) {
  if (!(t_L > 0.0)) throw ValidationError("NONPOSITIVE_T_L", "t_L must be > 0");
  const double denom = kBT * L0 * L0 * t_L;
  return convention == TimeConvention::slope ? 1.0 / (2.0 * denom) : 12.0 / denom;
}

double lambda_bound(double L0, double t_L) {
  if (!(t_L > 0.0)) throw ValidationError("NONPOSITIVE_T_L", "t_L must be > 0");
  return 3.0 / (L0 * L0 * t_L);
}

double overlap_at_flight_time(const EnvironmentSpec& env, double L0, double t_L,
                              TimeConvention convention) {
  switch (env.kind) {
    case EnvKind::isolated:
      return 1.0;
    case EnvKind::qbm_ohmic:
      return std::exp(-t_L / decoherence_time_qbm(env.gamma0, env.kBT, L0, convention));
    case EnvKind::scattering:
      return convention == TimeConvention::slope
                 ? overlap_scattering(env.Lambda, L0, t_L)
                 : std::exp(-t_L / decoherence_time_scattering(env.Lambda, L0));
    case EnvKind::dephasing:
      return dephasing_factor(env.deph_A, env.deph_B);
    case EnvKind::composite: {
      std::vector<double> values;
      for (const auto& m : env.composite_members)
        values.push_back(overlap_at_flight_time(m, L0, t_L, convention));
      return composite_overlap(values, env.composite_rule).value;
    }
  }
  return 1.0;
}

}  // namespace fringe
