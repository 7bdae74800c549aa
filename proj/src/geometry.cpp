#include "fringe/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fringe {

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::runtime_error([&] {
        std::ostringstream os;
        for (std::size_t i = 0; i < issues.size(); ++i) {
          if (i) os << "; ";
          os << issues[i].code << ": " << issues[i].message;
        }
        return os.str();
      }()),
      issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string code, const std::string& message)
    : ValidationError(std::vector<Issue>{{std::move(code), message}}) {}

std::optional<double> ExperimentGeometry::flight_time_from_optics(double hbar) const {
  if (!L || !lambda_dB) return std::nullopt;
  return M * *lambda_dB * *L / (2.0 * std::numbers::pi * hbar);
}

std::optional<double> ExperimentGeometry::flight_time(double hbar) const {
  if (t_L) return t_L;
  return flight_time_from_optics(hbar);
}

std::vector<Issue> geometry_issues(const ExperimentGeometry& geom, const UnitSystem& units) {
  std::vector<Issue> issues;
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      issues.push_back({"NONPOSITIVE_" + std::string(name),
                        std::string(name) + " must be strictly positive and finite"});
    }
  };
  positive(geom.L0, "L0");
  positive(geom.sigma_x0, "SIGMA_X0");
  positive(geom.sigma_y0, "SIGMA_Y0");
  positive(geom.M, "MASS");
  if (geom.L) positive(*geom.L, "L");
  if (geom.lambda_dB) positive(*geom.lambda_dB, "LAMBDA_DB");
  if (geom.t_L) positive(*geom.t_L, "T_L");
  if (!std::isfinite(geom.k_y)) issues.push_back({"NONFINITE_K_Y", "k_y must be finite"});

  if (geom.sigma_x0 > geom.L0) {
    std::ostringstream os;
    os << "sigma_x0 (" << geom.sigma_x0 << ") exceeds L0 (" << geom.L0 << ")";
    issues.push_back({"SIGMA_EXCEEDS_L0", os.str()});
  }
  if (units.mode == UnitMode::natural && geom.M != 1.0) {
    issues.push_back({"MASS_NOT_UNIT", "natural units require M = 1"});
  }
  if (geom.t_L) {
    if (auto optics = geom.flight_time_from_optics(units.hbar)) {
      const double rel = std::abs(*optics - *geom.t_L) / std::abs(*optics);
      if (rel > kFlightTimeTolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "t_L = " << *geom.t_L << " but M lambda_dB L / (2 pi hbar) = " << *optics;
        issues.push_back({"TL_INCONSISTENT", os.str()});
      }
    }
  }
  return issues;
}

const ExperimentGeometry& validate_geometry(const ExperimentGeometry& geom,
                                            const UnitSystem& units) {
  auto issues = geometry_issues(geom, units);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return geom;
}

namespace {

template <class F>
std::optional<double> map_opt(const std::optional<double>& v, F f) {
  if (!v) return std::nullopt;
  return f(*v);
}

}  // namespace

ExperimentGeometry geometry_to_natural(const ExperimentGeometry& geom, const UnitSystem& units) {
  ExperimentGeometry out = geom;
  const double ell = units.length_unit();
  out.L0 = geom.L0 / ell;
  out.sigma_x0 = geom.sigma_x0 / ell;
  out.sigma_y0 = geom.sigma_y0 / ell;
  out.k_y = geom.k_y * ell;
  out.L = map_opt(geom.L, [&](double v) { return v / ell; });
  out.lambda_dB = map_opt(geom.lambda_dB, [&](double v) { return v / ell; });
  out.M = geom.M / units.mass;
  return out;
}

ExperimentGeometry geometry_from_natural(const ExperimentGeometry& geom, const UnitSystem& units) {
  ExperimentGeometry out = geom;
  const double ell = units.length_unit();
  out.L0 = geom.L0 * ell;
  out.sigma_x0 = geom.sigma_x0 * ell;
  out.sigma_y0 = geom.sigma_y0 * ell;
  out.k_y = geom.k_y / ell;
  out.L = map_opt(geom.L, [&](double v) { return v * ell; });
  out.lambda_dB = map_opt(geom.lambda_dB, [&](double v) { return v * ell; });
  out.M = geom.M * units.mass;
  return out;
}

}  // namespace fringe
