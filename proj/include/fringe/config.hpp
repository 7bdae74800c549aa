#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fringe/ansatz.hpp"
#include "fringe/environment.hpp"
#include "fringe/geometry.hpp"
#include "fringe/timescales.hpp"
#include "fringe/pattern.hpp"

namespace fringe {

/// Optional `run` section: numerical settings shared by the CLI commands.
struct RunSettings {
  InitConvention init = InitConvention::physical;
  double tol = 1e-9;
  std::optional<double> t_end;
  std::optional<double> t;
  double times_start = 0.0;
  std::optional<double> times_stop;
  int times_count = 101;
  int fringe_index = 1;
  TimeConvention timescale_convention = TimeConvention::slope;
  SeparationConvention separation = SeparationConvention::full_2L0;
};

/// A parsed configuration. `geometry` and `environment` are in the units of
/// `units`; `natural_*` are the same quantities in the internal hbar = M = 1 frame.
struct Config {
  std::string source;
  UnitSystem units;
  ExperimentGeometry geometry;
  EnvironmentSpec environment;
  RunSettings run;
  nlohmann::json raw;

  ExperimentGeometry natural_geometry() const { return geometry_to_natural(geometry, units); }
  EnvironmentSpec natural_environment() const {
    return environment_to_natural(environment, units);
  }
};

/// Parses and validates a config tree. Unknown keys are a ValidationError.
Config parse_config(const nlohmann::json& tree);
Config load_config(const std::filesystem::path& path);

nlohmann::json environment_to_json(const EnvironmentSpec& env);

}  // namespace fringe
