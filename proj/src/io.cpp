#include "fringe/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fringe/errors.hpp"

namespace fringe {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || r.ec != std::errc() || r.ptr != text.data() + text.size())
    throw ValidationError("PARSE_ERROR", "not a number: '" + std::string(text) + "'");
  return v;
}

std::string CsvTable::comment(std::string_view key) const {
  for (const auto& c : comments) {
    const auto colon = c.find(':');
    if (colon == std::string::npos) continue;
    std::string_view k(c.data(), colon);
    while (!k.empty() && k.back() == ' ') k.remove_suffix(1);
    if (k == key) {
      std::string_view v(c);
      v.remove_prefix(colon + 1);
      while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
      return std::string(v);
    }
  }
  return {};
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ValidationError("MISSING_COLUMN", "no column '" + std::string(name) + "'");
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trimmed(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      table.comments.push_back(trimmed(std::string_view(t).substr(1)));
      continue;
    }
    const auto fields = split(t);
    if (table.header.empty()) {
      for (auto f : fields) table.header.push_back(trimmed(f));
      continue;
    }
    if (fields.size() != table.header.size())
      throw ValidationError("PARSE_ERROR", "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(table.header.size()) + " fields");
    std::vector<double> row;
    for (auto f : fields) {
      try {
        row.push_back(parse_number(f));
      } catch (const ValidationError& e) {
        throw ValidationError("PARSE_ERROR", "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ValidationError("PARSE_ERROR", "missing header line");
  return table;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("WRITE_FAILED", "cannot write '" + path.string() + "'");
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("FILE_NOT_FOUND", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  t.header = {"t", "A", "B", "C", "traceLog", "pre_transient"};
  for (const auto& s : traj.samples())
    t.rows.push_back({s.t, s.A, s.B, s.C, s.traceLog, traj.is_pre_transient(s.t) ? 1.0 : 0.0});
  return t;
}

json trajectory_json(const Trajectory& traj) {
  json j;
  j["fields"] = {"t", "A", "B", "C", "traceLog", "pre_transient"};
  j["samples"] = json::array();
  for (const auto& s : traj.samples())
    j["samples"].push_back({{"t", s.t}, {"A", s.A}, {"B", s.B}, {"C", s.C},
                            {"traceLog", s.traceLog}, {"pre_transient", traj.is_pre_transient(s.t)}});
  j["coefficients"] = {{"gamma", traj.coefficients().gamma},
                       {"D", traj.coefficients().D},
                       {"f", traj.coefficients().f}};
  j["tol"] = traj.tol();
  return j;
}

CsvTable overlap_table(const OverlapTrace& trace) {
  CsvTable t;
  t.comments.push_back("model: " + std::string(to_string(trace.model.kind)));
  t.header = {"t", "Gamma", "unphysical", "saturated"};
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const auto& g = trace.gamma_values[i];
    t.rows.push_back({trace.times[i], g.value, g.unphysical ? 1.0 : 0.0, g.saturated ? 1.0 : 0.0});
  }
  return t;
}

CsvTable profile_table(const IntensityProfile& p, std::string_view convention) {
  CsvTable t;
  t.comments = {"t: " + format_number(p.t), "model: " + p.model,
                "Gamma: " + format_number(p.gamma_used.value),
                "normalization: " + std::string(to_string(p.normalization)),
                "convention: " + std::string(convention)};
  if (p.grid_too_narrow) t.comments.push_back("warning: GRID_TOO_NARROW");
  t.header = {"x", "P"};
  for (std::size_t i = 0; i < p.xs.size(); ++i) t.rows.push_back({p.xs[i], p.values[i]});
  return t;
}

json profile_json(const IntensityProfile& p, std::string_view convention) {
  return {{"t", p.t},
          {"model", p.model},
          {"Gamma", p.gamma_used.value},
          {"normalization", std::string(to_string(p.normalization))},
          {"convention", std::string(convention)},
          {"grid_too_narrow", p.grid_too_narrow},
          {"x", p.xs},
          {"P", p.values}};
}

CsvTable visibility_table(const VisibilityTrace& tr) {
  CsvTable t;
  t.comments = {"model: " + tr.model, "fringe_index: " + std::to_string(tr.fringe_index)};
  if (!tr.not_formed.empty())
    t.comments.push_back("not_formed_until: " + format_number(tr.not_formed.back()));
  if (!tr.stop_reason.empty())
    t.comments.push_back("stop: " + tr.stop_reason + " at t=" + format_number(tr.stop_time));
  t.header = {"t", "nu", "Gamma"};
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    t.rows.push_back({tr.times[i], tr.nu_values[i], tr.gamma_values[i]});
  return t;
}

json visibility_json(const VisibilityTrace& tr) {
  json j = {{"model", tr.model},           {"fringe_index", tr.fringe_index},
            {"t", tr.times},               {"nu", tr.nu_values},
            {"Gamma", tr.gamma_values},    {"not_formed", tr.not_formed},
            {"stop_reason", tr.stop_reason}};
  if (!tr.stop_reason.empty()) j["stop_time"] = tr.stop_time;
  return j;
}

CsvTable residual_table(const ExperimentalDataset& data, const FitResult& fit) {
  CsvTable t;
  t.comments = {"source: " + data.source, "param: " + fit.param_name,
                "best_value: " + format_number(fit.best_value)};
  t.header = {"x", "data", "model", "residual"};
  for (std::size_t i = 0; i < data.xs.size(); ++i)
    t.rows.push_back({data.xs[i], data.counts[i], fit.model[i], data.counts[i] - fit.model[i]});
  return t;
}

json fit_json(const FitResult& f) {
  return {{"param_name", f.param_name}, {"best_value", f.best_value}, {"sse", f.sse},
          {"n_eval", f.n_eval},         {"bounds", {f.lo, f.hi}},     {"scale", f.scale},
          {"offset", f.offset},         {"Gamma_tL", f.gamma_tL},     {"converged", f.converged},
          {"flags", f.flags}};
}

namespace {

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out += prefix + "," + format_number(j.get<double>()) + "\n";
  } else if (j.is_string()) {
    out += prefix + "," + j.get<std::string>() + "\n";
  } else {
    out += prefix + "," + j.dump() + "\n";
  }
}

}  // namespace

std::string json_to_kv_csv(const json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

std::map<std::string, std::string> parse_kv_csv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (trimmed(line) != "key,value") throw ValidationError("PARSE_ERROR", "line 1: expected key,value header");
      continue;
    }
    if (trimmed(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ValidationError("PARSE_ERROR", "line " + std::to_string(line_no) + ": missing ','");
    out[line.substr(0, comma)] = trimmed(std::string_view(line).substr(comma + 1));
  }
  return out;
}

ExperimentalDataset parse_dataset(const std::string& text) {
  ExperimentalDataset d;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  std::size_t columns = 0;
  auto fail = [&](const std::string& code, const std::string& msg) {
    throw ValidationError(code, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trimmed(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto body = trimmed(std::string_view(t).substr(1));
      if (body.rfind("source:", 0) == 0) d.source = trimmed(std::string_view(body).substr(7));
      continue;
    }
    const auto fields = split(t);
    if (!header) {
      std::vector<std::string> names;
      for (auto f : fields) names.push_back(trimmed(f));
      const bool two = names == std::vector<std::string>{"x", "count"};
      const bool three = names == std::vector<std::string>{"x", "count", "sigma"};
      if (!two && !three) fail("PARSE_ERROR", "header must be x,count[,sigma]");
      columns = names.size();
      header = true;
      continue;
    }
    if (fields.size() != columns) fail("PARSE_ERROR", "expected " + std::to_string(columns) + " fields");
    double vals[3] = {0, 0, 0};
    for (std::size_t i = 0; i < columns; ++i) {
      try {
        vals[i] = parse_number(fields[i]);
      } catch (const ValidationError& e) {
        fail("PARSE_ERROR", e.what());
      }
    }
    if (!std::isfinite(vals[0]) || !std::isfinite(vals[1])) fail("PARSE_ERROR", "non-finite value");
    if (!d.xs.empty() && !(vals[0] > d.xs.back())) fail("NON_MONOTONE_X", "x must be strictly increasing");
    if (vals[1] < 0) fail("NEGATIVE_COUNT", "counts must be >= 0");
    const double sigma = columns == 3 ? vals[2] : std::sqrt(std::max(vals[1], 1.0));
    if (!(sigma > 0)) fail("NONPOSITIVE_SIGMA", "sigma must be > 0");
    d.xs.push_back(vals[0]);
    d.counts.push_back(vals[1]);
    d.sigma.push_back(sigma);
  }
  if (!header) throw ValidationError("PARSE_ERROR", "missing header line");
  return d;
}

ExperimentalDataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text(path));
}

}  // namespace fringe
