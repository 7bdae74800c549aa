#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fringe/fit.hpp"
#include "fringe/integrator.hpp"
#include "fringe/overlap.hpp"
#include "fringe/pattern.hpp"
#include "fringe/visibility.hpp"

namespace fringe {

/// 17 significant digits, '.' decimal point regardless of locale; inf/nan spelled out.
std::string format_number(double v);
/// Inverse of format_number; throws ValidationError("PARSE_ERROR") on junk.
double parse_number(std::string_view text);

/// Numeric table with a header row and leading `# key: value` comments.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Value of a `# key: value` comment, empty when absent.
  std::string comment(std::string_view key) const;
  std::size_t column(std::string_view name) const;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

CsvTable trajectory_table(const Trajectory& traj);
nlohmann::json trajectory_json(const Trajectory& traj);
CsvTable overlap_table(const OverlapTrace& trace);
CsvTable profile_table(const IntensityProfile& profile, std::string_view convention);
nlohmann::json profile_json(const IntensityProfile& profile, std::string_view convention);
CsvTable visibility_table(const VisibilityTrace& trace);
nlohmann::json visibility_json(const VisibilityTrace& trace);
CsvTable residual_table(const ExperimentalDataset& data, const FitResult& fit);
nlohmann::json fit_json(const FitResult& fit);

/// Flattens a JSON object into `key,value` rows (nested keys joined by '.').
std::string json_to_kv_csv(const nlohmann::json& j);
/// Reads the output of json_to_kv_csv back; values stay as text.
std::map<std::string, std::string> parse_kv_csv(const std::string& text);

/// Screen data, header `x,count[,sigma]`; sigma defaults to sqrt(max(count, 1)).
/// An optional `# source: ...` comment sets the source string.
ExperimentalDataset parse_dataset(const std::string& text);
ExperimentalDataset load_dataset(const std::filesystem::path& path);

}  // namespace fringe
