#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fringe/units.hpp"

namespace fringe {

enum class EnvKind { isolated, qbm_ohmic, scattering, dephasing, composite };
enum class CompositeRule { paper_sum, product, max };

std::string_view to_string(EnvKind kind);
std::string_view to_string(CompositeRule rule);
EnvKind parse_env_kind(std::string_view text);
CompositeRule parse_composite_rule(std::string_view text);

/// Environment model and its parameters. Fields irrelevant to `kind` are ignored.
struct EnvironmentSpec {
  EnvKind kind = EnvKind::isolated;
  double gamma0 = 0.0;
  double kBT = 1.0;
  bool include_f = false;
  double Lambda = 0.0;
  double deph_A = 0.0;
  double deph_B = 0.0;
  double deph_omega = 1.0;
  std::vector<EnvironmentSpec> composite_members;
  CompositeRule composite_rule = CompositeRule::max;

  static EnvironmentSpec isolated() { return {}; }
  static EnvironmentSpec qbm(double gamma0, double kBT, bool include_f = false);
  static EnvironmentSpec scattering(double Lambda);
  static EnvironmentSpec dephasing(double a, double b, double omega = 1.0);
  static EnvironmentSpec composite(std::vector<EnvironmentSpec> members, CompositeRule rule);

  double dephasing_modulus() const;
};

/// Master-equation coefficients (gamma, D, f) in natural units.
struct DerivedCoefficients {
  double gamma = 0.0;
  double D = 0.0;
  double f = 0.0;
};

/// Throws ValidationError listing every parameter-range violation.
void validate_environment(const EnvironmentSpec& env);

/// Only isolated and qbm_ohmic carry master-equation coefficients.
DerivedCoefficients derive_coefficients(const EnvironmentSpec& env, const UnitSystem& units);

/// Coefficients driving the ansatz dynamics for any model. Scattering and
/// dephasing act through the overlap factor only and evolve as isolated;
/// a composite uses its (single) qbm member if present.
DerivedCoefficients dynamics_coefficients(const EnvironmentSpec& env, const UnitSystem& units);

/// hbar / kBT: before this time the high-temperature results are unreliable.
double positivity_transient(const EnvironmentSpec& env, const UnitSystem& units);

/// Transient of the qbm part of any spec; 0 when there is none.
double pre_transient_of(const EnvironmentSpec& env, const UnitSystem& units);

/// Express an environment given in `units` in the internal natural frame.
EnvironmentSpec environment_to_natural(const EnvironmentSpec& env, const UnitSystem& units);

}  // namespace fringe
