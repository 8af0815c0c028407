#pragma once

// Suite runner behind `mnl verify`: configuration, the suite registry and
// report assembly.

#include <map>
#include <string>
#include <vector>

#include "mnl/momentum_grid.hpp"
#include "mnl/report.hpp"

namespace mnl {

struct SuiteConfig {
  std::string suite = "all";
  GridSpec grid;           // n_r, n_theta, n_phi, r_max; the rotation seed follows `seed`
  std::uint64_t seed = 7;
  double tol_scale = 1;    // multiplies every tolerance
  std::string report;      // empty: no report file
  ReportFormat format = ReportFormat::json;

  // Throws InvalidArgument for an unknown suite, tol_scale <= 0 or a bad grid.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// spinor, sections, wave-eq, weyl, maxwell, vector-potential, massive, fock
const std::vector<std::string>& suite_ids();

// "48x32x64" into n_r, n_theta, n_phi.
void parse_grid(const std::string& s, GridSpec& g);

// Key-value file: one "key = value" per line, '#' starts a comment. Keys:
// suite, grid, rmax, seed, tol_scale (or tol-scale), report, format.
std::map<std::string, std::string> read_config_file(const std::string& path);
// Defaults, then the file values, then the flags; unknown keys are an error.
SuiteConfig resolve_config(const std::map<std::string, std::string>& file,
                           const std::map<std::string, std::string>& flags);

// Runs every check of the selected suite ("all" runs them in registry order).
// Measured values depend only on the config.
std::vector<CheckRecord> run_suite(const SuiteConfig& cfg);

Report make_report(const SuiteConfig& cfg, std::vector<CheckRecord> records);
bool all_pass(const std::vector<CheckRecord>& records);

// Projection matrices, representations and fixed intertwiners of the equation
// registry, as "json" or "text". Deterministic, for regression snapshots.
std::string render_tables(const std::string& format);

} // namespace mnl
