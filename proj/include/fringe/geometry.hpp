#pragma once

#include <optional>
#include <vector>

#include "fringe/errors.hpp"
#include "fringe/units.hpp"

namespace fringe {

/// Two-slit geometry. L0 is the half separation: packet centers sit at +-L0.
struct ExperimentGeometry {
  double L0 = 0.0;
  double sigma_x0 = 0.0;
  double sigma_y0 = 1.0;
  double k_y = 0.0;
  std::optional<double> L;
  std::optional<double> lambda_dB;
  double M = 1.0;
  std::optional<double> t_L;

  /// Flight time M lambda L / (2 pi hbar) when L and lambda_dB are known.
  std::optional<double> flight_time_from_optics(double hbar) const;
  /// Explicit t_L if present, otherwise the optics-derived value.
  std::optional<double> flight_time(double hbar) const;
};

/// Relative tolerance for the t_L consistency identity.
inline constexpr double kFlightTimeTolerance = 1e-9;

/// All violated invariants; empty when the geometry is valid.
std::vector<Issue> geometry_issues(const ExperimentGeometry& geom, const UnitSystem& units);

/// Returns `geom` unchanged or throws ValidationError with every violation.
const ExperimentGeometry& validate_geometry(const ExperimentGeometry& geom,
                                            const UnitSystem& units);

ExperimentGeometry geometry_to_natural(const ExperimentGeometry& geom, const UnitSystem& units);
ExperimentGeometry geometry_from_natural(const ExperimentGeometry& geom, const UnitSystem& units);

}  // namespace fringe
