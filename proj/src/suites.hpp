#pragma once

// Shared plumbing for the suite implementations.

#include <chrono>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mnl/harness.hpp"
#include "mnl/random.hpp"

namespace mnl::suites {

class Context {
public:
  explicit Context(const SuiteConfig& cfg) : cfg_(cfg) {}

  const SuiteConfig& config() const { return cfg_; }
  Rng rng(const char* stream) const { return Rng(cfg_.seed, stream); }

  // The configured grid, its doubling, and the configured grid with n_phi doubled.
  GridPtr grid();
  GridPtr doubled_grid();
  GridPtr phi_doubled_grid();
  GridSpec spec() const;

  // Runs measure() and appends a record; the tolerance is scaled by tol_scale.
  // An exception from measure() is recorded as a failure with measured = NaN.
  void check(const std::string& id, const std::string& reference, double tolerance, const std::string& comparison,
             const std::function<double()>& measure, const std::string& grid_label = "-");
  // Same with the grid label of the configured grid.
  void grid_check(const std::string& id, const std::string& reference, double tolerance, const std::string& comparison,
                  const std::function<double()>& measure) {
    check(id, reference, tolerance, comparison, measure, spec().str());
  }

  std::vector<CheckRecord>& records() { return records_; }

private:
  SuiteConfig cfg_;
  GridPtr grid_, doubled_, phi_doubled_;
  std::vector<CheckRecord> records_;
};

// 1 if f throws an exception of type E, 0 otherwise (for guard checks).
template <typename E, typename F> double throws(F&& f) {
  try {
    f();
  } catch (const E&) {
    return 0;
  } catch (...) {
    return 1;
  }
  return 1;
}

template <typename A, typename B> double max_diff(const A& a, const B& b) { return (a - b).cwiseAbs().maxCoeff(); }

void spinor(Context& c);
void sections(Context& c);
void wave_eq(Context& c);
void weyl(Context& c);
void maxwell(Context& c);
void vector_potential(Context& c);
void massive(Context& c);
void fock(Context& c);

} // namespace mnl::suites
