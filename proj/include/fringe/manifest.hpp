#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fringe {

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

struct InputHash {
  std::string path;
  std::string sha256;
};

/// Record of one CLI run. The timestamp is the only non-deterministic field.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::string version = FRINGEWORKS_VERSION;
  std::string timestamp;
  std::vector<InputHash> inputs;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace fringe
