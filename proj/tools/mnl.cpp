// mnl verify | mnl tables

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "mnl/errors.hpp"
#include "mnl/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for massless field nets"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run a check suite and optionally write a report");
  std::map<std::string, std::string> flags;
  std::string config_path;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    verify->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  std::string suites = "all";
  for (const auto& s : mnl::suite_ids()) suites += ", " + s;
  flag("--suite", "suite", "one of: " + suites);
  flag("--grid", "grid", "radial x polar x azimuthal counts, e.g. 48x32x64");
  flag("--rmax", "rmax", "radial cutoff of the momentum grid");
  flag("--seed", "seed", "random seed");
  flag("--tol-scale", "tol_scale", "multiplies every tolerance");
  flag("--report", "report", "write a report to this path");
  flag("--format", "format", "report format: json or csv");
  verify->add_option("--config", config_path, "key = value file; flags override it");
  bool quiet = false;
  verify->add_flag("-q,--quiet", quiet, "print only the summary line");

  auto* tables = app.add_subcommand("tables", "print the equation registry matrices");
  std::string table_format = "text";
  tables->add_option("--format", table_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tables) {
      std::cout << mnl::render_tables(table_format);
      return 0;
    }
    std::map<std::string, std::string> file;
    if (!config_path.empty()) file = mnl::read_config_file(config_path);
    mnl::SuiteConfig cfg = mnl::resolve_config(file, flags);
    auto records = mnl::run_suite(cfg);
    std::size_t failed = 0;
    for (const auto& r : records) {
      if (!r.pass) ++failed;
      if (!quiet || !r.pass)
        std::printf("%-4s %-44s %12.4e %s %-10.3e %s\n", r.pass ? "ok" : "FAIL", r.check_id.c_str(), r.measured,
                    r.comparison.c_str(), r.tolerance, r.grid.c_str());
    }
    std::printf("%zu checks, %zu failed\n", records.size(), failed);
    if (!cfg.report.empty()) mnl::emit_report(mnl::make_report(cfg, std::move(records)), cfg.report, cfg.format);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mnl: %s\n", e.what());
    return 2;
  }
}
