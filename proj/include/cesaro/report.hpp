// Experiment reports and their CSV / JSON encodings.
//
// CSV columns are fixed: experiment_id,n,alpha,N,computed,bound,slack,method,wall_time_ms
// Floating-point fields use 17 significant digits; absent optionals are empty.
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

namespace cesaro {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct ExperimentRow {
  std::string experiment_id;
  std::size_t n = 0;
  std::optional<double> alpha;
  std::optional<std::size_t> N;
  double computed = 0.0;
  double bound = 0.0;
  /// bound - computed for upper-bound rows, computed - bound for lower-bound rows.
  double slack = 0.0;
  std::string method;
  double wall_time_ms = 0.0;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ReportMetadata {
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, double> tolerances;
  std::string version = kVersion;
  std::vector<std::string> notes;
  bool passed = true;
  /// One entry per failing check, naming its (n, alpha, N).
  std::vector<std::string> failures;

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  ReportMetadata metadata;

  void fail(std::string message) {
    metadata.passed = false;
    metadata.failures.push_back(std::move(message));
  }

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

inline constexpr const char* kCsvHeader =
    "experiment_id,n,alpha,N,computed,bound,slack,method,wall_time_ms";

inline void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.experiment_id << ',' << r.n << ',' << (r.alpha ? format_double(*r.alpha) : "") << ','
        << (r.N ? std::to_string(*r.N) : "") << ',' << format_double(r.computed) << ','
        << format_double(r.bound) << ',' << format_double(r.slack) << ',' << r.method << ','
        << format_double(r.wall_time_ms) << '\n';
  }
}

inline std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_csv(out, report);
  return out.str();
}

inline void to_json(nlohmann::json& j, const ExperimentRow& r) {
  j = nlohmann::json{{"experiment_id", r.experiment_id},
                     {"n", r.n},
                     {"alpha", r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json(nullptr)},
                     {"N", r.N ? nlohmann::json(*r.N) : nlohmann::json(nullptr)},
                     {"computed", r.computed},
                     {"bound", r.bound},
                     {"slack", r.slack},
                     {"method", r.method},
                     {"wall_time_ms", r.wall_time_ms}};
}

inline void from_json(const nlohmann::json& j, ExperimentRow& r) {
  j.at("experiment_id").get_to(r.experiment_id);
  j.at("n").get_to(r.n);
  r.alpha = j.at("alpha").is_null() ? std::nullopt : std::optional(j.at("alpha").get<double>());
  r.N = j.at("N").is_null() ? std::nullopt : std::optional(j.at("N").get<std::size_t>());
  j.at("computed").get_to(r.computed);
  j.at("bound").get_to(r.bound);
  j.at("slack").get_to(r.slack);
  j.at("method").get_to(r.method);
  j.at("wall_time_ms").get_to(r.wall_time_ms);
}

inline void to_json(nlohmann::json& j, const ReportMetadata& m) {
  j = nlohmann::json{{"seed", m.seed},         {"tolerances", m.tolerances},
                     {"version", m.version},   {"notes", m.notes},
                     {"passed", m.passed},     {"failures", m.failures}};
}

inline void from_json(const nlohmann::json& j, ReportMetadata& m) {
  j.at("seed").get_to(m.seed);
  j.at("tolerances").get_to(m.tolerances);
  j.at("version").get_to(m.version);
  j.at("notes").get_to(m.notes);
  j.at("passed").get_to(m.passed);
  j.at("failures").get_to(m.failures);
}

inline void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = nlohmann::json{{"metadata", r.metadata}, {"rows", r.rows}};
}

inline void from_json(const nlohmann::json& j, ExperimentReport& r) {
  j.at("metadata").get_to(r.metadata);
  j.at("rows").get_to(r.rows);
}

inline std::string to_json_string(const ExperimentReport& report) {
  return nlohmann::json(report).dump(2) + "\n";
}

inline ExperimentReport report_from_json_string(const std::string& text) {
  return nlohmann::json::parse(text).get<ExperimentReport>();
}

enum class ReportFormat { csv, json };

inline void write_report(const std::filesystem::path& path, const ExperimentReport& report,
                         ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (format == ReportFormat::csv ? to_csv(report) : to_json_string(report));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline ExperimentReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json_string(buf.str());
}

}  // namespace cesaro
