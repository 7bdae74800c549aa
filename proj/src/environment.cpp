#include "fringe/environment.hpp"

#include <cmath>

#include "fringe/errors.hpp"

namespace fringe {

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::isolated: return "isolated";
    case EnvKind::qbm_ohmic: return "qbm_ohmic";
    case EnvKind::scattering: return "scattering";
    case EnvKind::dephasing: return "dephasing";
    case EnvKind::composite: return "composite";
  }
  return "?";
}

std::string_view to_string(CompositeRule rule) {
  switch (rule) {
    case CompositeRule::paper_sum: return "paper_sum";
    case CompositeRule::product: return "product";
    case CompositeRule::max: return "max";
  }
  return "?";
}

EnvKind parse_env_kind(std::string_view text) {
  if (text == "isolated") return EnvKind::isolated;
  if (text == "qbm_ohmic" || text == "qbm") return EnvKind::qbm_ohmic;
  if (text == "scattering") return EnvKind::scattering;
  if (text == "dephasing") return EnvKind::dephasing;
  if (text == "composite") return EnvKind::composite;
  throw ValidationError("UNKNOWN_ENV_KIND", "unknown environment kind '" + std::string(text) + "'");
}

CompositeRule parse_composite_rule(std::string_view text) {
  if (text == "paper_sum") return CompositeRule::paper_sum;
  if (text == "product") return CompositeRule::product;
  if (text == "max") return CompositeRule::max;
  throw ValidationError("UNKNOWN_COMPOSITE_RULE",
                        "unknown composite rule '" + std::string(text) + "'");
}

EnvironmentSpec EnvironmentSpec::qbm(double gamma0, double kBT, bool include_f) {
  EnvironmentSpec env;
  env.kind = EnvKind::qbm_ohmic;
  env.gamma0 = gamma0;
  env.kBT = kBT;
  env.include_f = include_f;
  return env;
}

EnvironmentSpec EnvironmentSpec::scattering(double Lambda) {
  EnvironmentSpec env;
  env.kind = EnvKind::scattering;
  env.Lambda = Lambda;
  return env;
}

EnvironmentSpec EnvironmentSpec::dephasing(double a, double b, double omega) {
  EnvironmentSpec env;
  env.kind = EnvKind::dephasing;
  env.deph_A = a;
  env.deph_B = b;
  env.deph_omega = omega;
  return env;
}

EnvironmentSpec EnvironmentSpec::composite(std::vector<EnvironmentSpec> members,
                                           CompositeRule rule) {
  EnvironmentSpec env;
  env.kind = EnvKind::composite;
  env.composite_members = std::move(members);
  env.composite_rule = rule;
  return env;
}

double EnvironmentSpec::dephasing_modulus() const { return std::hypot(deph_A, deph_B); }

namespace {

void collect_issues(const EnvironmentSpec& env, std::vector<Issue>& issues, bool nested) {
  switch (env.kind) {
    case EnvKind::qbm_ohmic:
      if (!(env.gamma0 >= 0.0) || !std::isfinite(env.gamma0))
        issues.push_back({"NEGATIVE_GAMMA0", "gamma0 must be >= 0"});
      if (!(env.kBT > 0.0) || !std::isfinite(env.kBT))
        issues.push_back({"NONPOSITIVE_KBT", "kBT must be > 0"});
      break;
    case EnvKind::scattering:
      if (!(env.Lambda >= 0.0) || !std::isfinite(env.Lambda))
        issues.push_back({"NEGATIVE_LAMBDA", "Lambda must be >= 0"});
      break;
    case EnvKind::dephasing:
      if (!std::isfinite(env.deph_A) || !std::isfinite(env.deph_B))
        issues.push_back({"NONFINITE_DEPHASING", "dephasing amplitudes must be finite"});
      if (!(env.deph_omega > 0.0))
        issues.push_back({"NONPOSITIVE_OMEGA", "deph_omega must be > 0"});
      break;
    case EnvKind::composite: {
      if (nested) issues.push_back({"COMPOSITE_NESTED", "composite members may not be composite"});
      if (env.composite_members.empty())
        issues.push_back({"COMPOSITE_EMPTY", "composite environment needs members"});
      int qbm_members = 0;
      for (const auto& m : env.composite_members) {
        if (m.kind == EnvKind::qbm_ohmic) ++qbm_members;
        collect_issues(m, issues, true);
      }
      if (qbm_members > 1)
        issues.push_back({"COMPOSITE_MULTIPLE_QBM", "at most one qbm_ohmic member is supported"});
      break;
    }
    case EnvKind::isolated:
      break;
  }
  if (env.kind != EnvKind::composite && !env.composite_members.empty())
    issues.push_back({"MEMBERS_ON_NON_COMPOSITE", "members given for a non-composite environment"});
}

}  // namespace

void validate_environment(const EnvironmentSpec& env) {
  std::vector<Issue> issues;
  collect_issues(env, issues, false);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

DerivedCoefficients derive_coefficients(const EnvironmentSpec& env, const UnitSystem& units) {
  switch (env.kind) {
    case EnvKind::isolated:
      return {};
    case EnvKind::qbm_ohmic: {
      validate_environment(env);
      DerivedCoefficients c;
      c.gamma = env.gamma0;
      c.D = 2.0 * units.mass * env.gamma0 * env.kBT / (units.hbar * units.hbar);
      c.f = env.include_f ? units.hbar / env.kBT : 0.0;
      return c;
    }
    default:
      throw ValidationError("UNSUPPORTED_KIND", "environment '" + std::string(to_string(env.kind)) +
                                                    "' has no master-equation coefficients");
  }
}

DerivedCoefficients dynamics_coefficients(const EnvironmentSpec& env, const UnitSystem& units) {
  switch (env.kind) {
    case EnvKind::isolated:
    case EnvKind::qbm_ohmic:
      return derive_coefficients(env, units);
    case EnvKind::composite:
      for (const auto& m : env.composite_members)
        if (m.kind == EnvKind::qbm_ohmic) return derive_coefficients(m, units);
      return {};
    default:
      return {};
  }
}

double positivity_transient(const EnvironmentSpec& env, const UnitSystem& units) {
  if (env.kind != EnvKind::qbm_ohmic)
    throw ValidationError("UNSUPPORTED_KIND", "positivity transient needs a qbm_ohmic environment");
  if (!(env.kBT > 0.0)) throw ValidationError("NONPOSITIVE_KBT", "kBT must be > 0");
  return units.hbar / env.kBT;
}

double pre_transient_of(const EnvironmentSpec& env, const UnitSystem& units) {
  if (env.kind == EnvKind::qbm_ohmic) return positivity_transient(env, units);
  if (env.kind == EnvKind::composite)
    for (const auto& m : env.composite_members)
      if (m.kind == EnvKind::qbm_ohmic) return positivity_transient(m, units);
  return 0.0;
}

EnvironmentSpec environment_to_natural(const EnvironmentSpec& env, const UnitSystem& units) {
  EnvironmentSpec out = env;
  out.kBT = units.energy_to_natural(env.kBT);
  out.Lambda = units.area_rate_to_natural(env.Lambda);
  for (auto& m : out.composite_members) m = environment_to_natural(m, units);
  return out;
}

}  // namespace fringe
