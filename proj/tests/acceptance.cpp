// Acceptance run: one line per criterion. Every criterion re-evaluates the
// measured values of the named checks against the tolerances pinned below,
// independent of the tolerances the suites record.
//
// A criterion listed in kKnownFailures is reported as a known failure and
// does not change the exit code; anything else that fails does.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mnl/harness.hpp"

using namespace mnl;

namespace {

struct Pin {
  std::string id;  // exact check id, or a prefix ending in '.'
  double tol;
  std::string cmp = "<=";
  std::size_t min_count = 1;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Pin> pins;
  double runtime_limit_s = 0; // 0: no limit; otherwise the summed runtime of the pinned checks
};

// Checks expected to fail on the default grid; see the README.
const std::set<std::string> kKnownFailures = {"maxwell.causality_spacelike"};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1,
       "section identities",
       {{"sections.defining_identity", 1e-9}, {"sections.determinant", 1e-9}, {"massive.pdagger", 1e-11}},
       5},
      {2, "little-group structure", {{"sections.wigner_in_e2", 1e-10}, {"sections.phase_cocycle", 1e-10}}, 5},
      {3,
       "projection table",
       {{"wave.table.", 0, "<=", 6},
        {"wave.invariance_d1.", 1e-12, "<=", 6},
        {"wave.isometry_d2.weyl", 1e-12},
        {"wave.isometry_d2.maxwell_F", 1e-12},
        {"wave.isometry_d2.helicity(3)", 1e-12},
        {"wave.isometry_d2.maxwell_A", 0.1, ">="}}},
      {4, "massive equivalence", {{"massive.dirac_projection", 1e-11}, {"massive.proca_commutation", 1e-12}}},
      {5,
       "wave equations of embedded data",
       {{"weyl.residual.", 1e-10, "<=", 2},
        {"maxwell.residual.", 1e-10, "<=", 2},
        {"weyl.derivative_data.", 1e-9, "<=", 2},
        {"maxwell.derivative_data.", 1e-9, "<=", 1}}},
      {6, "intertwining", {{"weyl.intertwining", 1e-8}, {"maxwell.intertwining", 1e-8}}, 60},
      {7,
       "causality",
       {{"weyl.causality_spacelike", 1e-5},
        {"weyl.causality_doubling", 4, ">="},
        {"weyl.causality_control", 1e-4, ">="},
        {"maxwell.causality_spacelike", 1e-5},
        {"maxwell.causality_doubling", 4, ">="},
        {"maxwell.causality_control", 1e-4, ">="},
        {"pauli_jordan.n0", 1},
        {"pauli_jordan.n1", 1},
        {"pauli_jordan.n2", 1}}},
      {8,
       "isometries",
       {{"weyl.phi_isometry", 1e-10},
        {"maxwell.phi_isometry", 1e-10},
        {"vp.phi_af_isometry", 1e-10},
        {"vp.pairing_identity", 1e-12},
        {"vp.degenerate", 1e-12}}},
      {9,
       "Fock layer",
       {{"fock.car", 1e-12},
        {"fock.ccr", 1e-12},
        {"fock.norm_bound", 1},
        {"fock.two_point_weyl", 1e-11},
        {"fock.two_point_maxwell", 1e-11},
        {"fock.spectral_positivity", -1e-12, ">="},
        {"fock.covariance_", 1e-7, "<=", 6}}},
      {10,
       "continuity bound",
       {{"weyl.continuity_constant", 1e-12}, {"weyl.continuity_violations", 0}}},
  };
  return c;
}

bool matches(const Pin& p, const std::string& id) {
  char last = p.id.back();
  if (last == '.' || last == '_') return id.rfind(p.id, 0) == 0;
  return id == p.id;
}

struct Outcome {
  bool pass = true;
  bool known_only = true; // every failure is a known one
  std::string detail;
};

Outcome judge(const Criterion& c, const std::vector<CheckRecord>& records) {
  Outcome o;
  double runtime_ms = 0;
  for (const auto& pin : c.pins) {
    std::size_t count = 0;
    for (const auto& r : records) {
      if (!matches(pin, r.check_id)) continue;
      ++count;
      runtime_ms += r.runtime_ms;
      if (!evaluate(r.measured, pin.tol, pin.cmp)) {
        o.pass = false;
        if (!kKnownFailures.count(r.check_id)) o.known_only = false;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s%s = %.3e (needs %s %.1e)", o.detail.empty() ? "" : "; ",
                      r.check_id.c_str(), r.measured, pin.cmp.c_str(), pin.tol);
        o.detail += buf;
      }
    }
    if (count < pin.min_count) {
      o.pass = false;
      o.known_only = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("missing ") + pin.id;
    }
  }
  if (c.runtime_limit_s > 0 && runtime_ms > 1000 * c.runtime_limit_s) {
    o.pass = false;
    o.known_only = false;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%sruntime %.1f s over %.0f s", o.detail.empty() ? "" : "; ", runtime_ms / 1000,
                  c.runtime_limit_s);
    o.detail += buf;
  } else if (c.runtime_limit_s > 0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%sruntime %.2f s", o.detail.empty() ? "" : "; ", runtime_ms / 1000);
    o.detail += buf;
  }
  return o;
}

} // namespace

int main() {
  SuiteConfig cfg; // defaults: all suites, 48x32x64, r_max 20, seed 7
  auto t0 = std::chrono::steady_clock::now();
  auto records = run_suite(cfg);
  double total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int unexpected = 0;
  auto line = [&](int n, const std::string& title, const Outcome& o) {
    const char* status = o.pass ? "PASS" : (o.known_only ? "FAIL (known, documented)" : "FAIL");
    if (!o.pass && !o.known_only) ++unexpected;
    std::printf("criterion %2d %-34s %s%s%s\n", n, title.c_str(), status, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
  };
  for (const auto& c : criteria()) line(c.number, c.title, judge(c, records));

  // 11: determinism, honesty under tol_scale, total runtime
  Outcome h;
  char buf[256];
  std::snprintf(buf, sizeof buf, "full run %.1f s", total_s);
  h.detail = buf;
  if (total_s > 600) {
    h.pass = h.known_only = false;
    h.detail += " (over 600 s)";
  }
  {
    // rerun under a different thread count; reports must be byte-identical
    const char* old = std::getenv("MNL_THREADS");
    std::string saved = old ? old : "";
    setenv("MNL_THREADS", "3", 1);
    auto again = run_suite(cfg);
    if (old)
      setenv("MNL_THREADS", saved.c_str(), 1);
    else
      unsetenv("MNL_THREADS");
    std::string a = render_report(make_report(cfg, records), ReportFormat::json, false);
    std::string b = render_report(make_report(cfg, again), ReportFormat::json, false);
    if (a != b) {
      h.pass = h.known_only = false;
      h.detail += "; reports differ between runs";
    } else {
      h.detail += "; rerun byte-identical";
    }
  }
  {
    SuiteConfig tight = cfg;
    tight.suite = "spinor";
    tight.tol_scale = 1e-6;
    auto t = run_suite(tight);
    std::size_t failed = 0;
    for (const auto& r : t) failed += !r.pass;
    std::snprintf(buf, sizeof buf, "; tol_scale 1e-6 fails %zu of %zu", failed, t.size());
    h.detail += buf;
    if (failed == 0) h.pass = h.known_only = false;
  }
  line(11, "harness determinism and honesty", h);

  std::size_t failed = 0;
  for (const auto& r : records) failed += !r.pass;
  std::printf("%zu checks recorded, %zu failed; %d unexpected criterion failures\n", records.size(), failed,
              unexpected);
  return unexpected == 0 ? 0 : 1;
}
