#include "mnl/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mnl/errors.hpp"

namespace mnl {

using ojson = nlohmann::ordered_json;

bool evaluate(double measured, double tolerance, const std::string& comparison) {
  if (std::isnan(measured) || std::isnan(tolerance)) return false;
  if (comparison == "<=") return std::abs(measured) <= tolerance;
  if (comparison == ">=") return measured >= tolerance;
  throw InvalidArgument("evaluate: unknown comparison '" + comparison + "'");
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw InvalidArgument("unknown report format '" + s + "' (expected json or csv)");
}

std::string to_string(ReportFormat f) { return f == ReportFormat::json ? "json" : "csv"; }

namespace {

ojson number(double x) {
  // JSON has no NaN or infinity
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double from_number(const ojson& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

ojson record_json(const CheckRecord& r, bool runtime) {
  ojson j;
  j["check_id"] = r.check_id;
  j["reference"] = r.reference;
  j["measured"] = number(r.measured);
  j["tolerance"] = number(r.tolerance);
  j["comparison"] = r.comparison;
  j["pass"] = r.pass;
  j["grid"] = r.grid;
  j["seed"] = r.seed;
  j["runtime_ms"] = runtime ? number(r.runtime_ms) : ojson(0.0);
  return j;
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Report parse_report(const ojson& j) {
  if (!j.is_object() || !j.contains("records") || !j["records"].is_array())
    throw Error("parse_report_json: missing records array");
  Report r;
  if (j.contains("config")) r.config = j["config"];
  for (const auto& x : j["records"]) {
    CheckRecord c;
    c.check_id = x.at("check_id").get<std::string>();
    c.reference = x.at("reference").get<std::string>();
    c.measured = from_number(x.at("measured"));
    c.tolerance = from_number(x.at("tolerance"));
    c.comparison = x.at("comparison").get<std::string>();
    c.pass = x.at("pass").get<bool>();
    c.grid = x.at("grid").get<std::string>();
    c.seed = x.at("seed").get<std::uint64_t>();
    c.runtime_ms = from_number(x.at("runtime_ms"));
    r.records.push_back(std::move(c));
  }
  return r;
}

} // namespace

const std::string& csv_header() {
  static const std::string h = "check_id,reference,measured,tolerance,comparison,pass,grid,seed,runtime_ms";
  return h;
}

std::string render_report(const Report& r, ReportFormat f, bool include_runtime) {
  if (f == ReportFormat::json) {
    ojson j;
    j["version"] = kReportVersion;
    j["config"] = r.config;
    j["records"] = ojson::array();
    for (const auto& rec : r.records) j["records"].push_back(record_json(rec, include_runtime));
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << csv_header() << "\n";
  for (const auto& rec : r.records) {
    os << csv_field(rec.check_id) << ',' << csv_field(rec.reference) << ',' << csv_number(rec.measured) << ','
       << csv_number(rec.tolerance) << ',' << csv_field(rec.comparison) << ',' << (rec.pass ? "true" : "false") << ','
       << csv_field(rec.grid) << ',' << rec.seed << ',' << csv_number(include_runtime ? rec.runtime_ms : 0.0) << "\n";
  }
  return os.str();
}

void emit_report(const Report& r, const std::string& path, ReportFormat f) {
  if (r.records.empty()) throw InvalidArgument("emit_report: no records to write");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("emit_report: cannot open '" + path + "' for writing");
  os << render_report(r, f);
  os.flush();
  if (!os) throw Error("emit_report: write to '" + path + "' failed");
}

Report parse_report_json(const std::string& text) {
  try {
    return parse_report(ojson::parse(text));
  } catch (const ojson::exception& e) {
    throw Error(std::string("parse_report_json: ") + e.what());
  }
}

} // namespace mnl
