#pragma once

// Check records and the JSON / CSV reports built from them.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace mnl {

struct CheckRecord {
  std::string check_id;
  std::string reference; // the claim being checked, in words
  double measured = 0;
  double tolerance = 0;
  // "<=": |measured| <= tolerance, ">=": measured >= tolerance
  std::string comparison = "<=";
  bool pass = false;
  std::string grid;
  std::uint64_t seed = 0;
  double runtime_ms = 0;
};

// NaN never passes.
bool evaluate(double measured, double tolerance, const std::string& comparison);

enum class ReportFormat { json, csv };
ReportFormat parse_format(const std::string& s);
std::string to_string(ReportFormat f);

inline constexpr int kReportVersion = 1;

struct Report {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<CheckRecord> records;
};

// JSON: {"version", "config", "records": [...]}; CSV: fixed header, one row
// per record. With include_runtime = false the runtime fields are written as
// 0, which makes reports of identical runs byte-identical.
std::string render_report(const Report& r, ReportFormat f, bool include_runtime = true);
// Throws InvalidArgument on empty records, Error naming the path on I/O failure.
void emit_report(const Report& r, const std::string& path, ReportFormat f);
Report parse_report_json(const std::string& text);
const std::string& csv_header();

} // namespace mnl
