#include "mnl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mnl/errors.hpp"
#include "mnl/wave_equations.hpp"
#include "suites.hpp"

namespace mnl {

namespace suites {

GridSpec Context::spec() const {
  GridSpec s = cfg_.grid;
  s.seed = cfg_.seed;
  return s;
}

GridPtr Context::grid() {
  if (!grid_) grid_ = build_grid(spec());
  return grid_;
}

GridPtr Context::doubled_grid() {
  if (!doubled_) doubled_ = build_grid(spec().doubled());
  return doubled_;
}

GridPtr Context::phi_doubled_grid() {
  if (!phi_doubled_) {
    GridSpec s = spec();
    s.n_phi *= 2;
    phi_doubled_ = build_grid(s);
  }
  return phi_doubled_;
}

void Context::check(const std::string& id, const std::string& reference, double tolerance,
                    const std::string& comparison, const std::function<double()>& measure,
                    const std::string& grid_label) {
  CheckRecord r;
  r.check_id = id;
  r.reference = reference;
  r.tolerance = tolerance * cfg_.tol_scale;
  r.comparison = comparison;
  r.grid = grid_label;
  r.seed = cfg_.seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.measured = measure();
  } catch (const std::exception& e) {
    r.measured = std::numeric_limits<double>::quiet_NaN();
    r.reference += " [raised: " + std::string(e.what()) + "]";
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.pass = evaluate(r.measured, r.tolerance, r.comparison);
  records_.push_back(std::move(r));
}

} // namespace suites

namespace {

using SuiteFn = void (*)(suites::Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"spinor", suites::spinor},   {"sections", suites::sections},
      {"wave-eq", suites::wave_eq}, {"weyl", suites::weyl},
      {"maxwell", suites::maxwell}, {"vector-potential", suites::vector_potential},
      {"massive", suites::massive}, {"fock", suites::fock},
  };
  return r;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw InvalidArgument("config: " + key + " expects a number, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    if (!v.empty() && v[0] != '-') x = std::stoull(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size())
    throw InvalidArgument("config: " + key + " expects a nonnegative integer, got '" + v + "'");
  return x;
}

void apply(SuiteConfig& c, const std::string& key, const std::string& v) {
  if (key == "suite")
    c.suite = v;
  else if (key == "grid")
    parse_grid(v, c.grid);
  else if (key == "rmax" || key == "r_max")
    c.grid.r_max = parse_double(key, v);
  else if (key == "seed")
    c.seed = parse_u64(key, v);
  else if (key == "tol_scale" || key == "tol-scale")
    c.tol_scale = parse_double(key, v);
  else if (key == "report")
    c.report = v;
  else if (key == "format")
    c.format = parse_format(v);
  else
    throw InvalidArgument("config: unknown key '" + key + "'");
}

} // namespace

void SuiteConfig::validate() const {
  if (suite != "all" && std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
    throw InvalidArgument("unknown suite '" + suite + "'");
  if (!(tol_scale > 0) || !std::isfinite(tol_scale)) throw InvalidArgument("tol_scale must be positive");
  if (grid.n_r < 2 || grid.n_theta < 2 || grid.n_phi < 2) throw InvalidArgument("grid counts must be at least 2");
  if (!(grid.r_max > 0)) throw InvalidArgument("rmax must be positive");
}

nlohmann::ordered_json SuiteConfig::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["grid"] = std::to_string(grid.n_r) + "x" + std::to_string(grid.n_theta) + "x" + std::to_string(grid.n_phi);
  j["rmax"] = grid.r_max;
  j["seed"] = seed;
  j["tol_scale"] = tol_scale;
  return j;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return ids;
}

void parse_grid(const std::string& s, GridSpec& g) {
  int a = 0, b = 0, c = 0;
  char x1 = 0, x2 = 0;
  std::istringstream is(s);
  if (!(is >> a >> x1 >> b >> x2 >> c) || x1 != 'x' || x2 != 'x' || is.peek() != EOF)
    throw InvalidArgument("grid must look like 48x32x64, got '" + s + "'");
  if (a < 2 || b < 2 || c < 2) throw InvalidArgument("grid counts must be at least 2, got '" + s + "'");
  g.n_r = a;
  g.n_theta = b;
  g.n_phi = c;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

SuiteConfig resolve_config(const std::map<std::string, std::string>& file,
                           const std::map<std::string, std::string>& flags) {
  SuiteConfig c;
  for (const auto& [k, v] : file) apply(c, k, v);
  for (const auto& [k, v] : flags) apply(c, k, v);
  c.validate();
  return c;
}

std::vector<CheckRecord> run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  suites::Context ctx(cfg);
  for (const auto& [name, fn] : registry())
    if (cfg.suite == "all" || cfg.suite == name) fn(ctx);
  return std::move(ctx.records());
}

Report make_report(const SuiteConfig& cfg, std::vector<CheckRecord> records) {
  Report r;
  r.config = cfg.to_json();
  r.records = std::move(records);
  return r;
}

bool all_pass(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

namespace {

nlohmann::ordered_json matrix_json(const MatXc& m) {
  nlohmann::ordered_json re = nlohmann::ordered_json::array(), im = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r, s;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real() + 0.0);
      s.push_back(m(i, j).imag() + 0.0);
    }
    re.push_back(r);
    im.push_back(s);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

std::string half(int j) { return j % 2 == 0 ? std::to_string(j / 2) : std::to_string(j) + "/2"; }

std::string label_str(RepLabel l) { return "D(" + half(l.j) + "," + half(l.k) + ")"; }

std::string cell(cplx z) {
  char buf[64];
  double re = z.real() + 0.0, im = z.imag() + 0.0;
  if (im == 0)
    std::snprintf(buf, sizeof buf, "%.6g", re);
  else
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
  return buf;
}

void matrix_text(std::ostringstream& os, const std::string& title, const MatXc& m) {
  os << title << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::string c = cell(m(i, j));
      os << " " << std::string(c.size() < 10 ? 10 - c.size() : 0, ' ') << c;
    }
    os << "\n";
  }
}

} // namespace

std::string render_tables(const std::string& format) {
  if (format != "json" && format != "text") throw InvalidArgument("tables format must be json or text, got '" + format + "'");
  const std::vector<EquationId> eqs = {EquationId::weyl(),  EquationId::maxwell_F(), EquationId::maxwell_A(),
                                       EquationId::dirac(), EquationId::proca(),     EquationId::helicity(3)};
  if (format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kReportVersion;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (EquationId e : eqs) {
      FiniteRep rep = rep_for(e);
      nlohmann::ordered_json x;
      x["equation"] = e.name();
      x["representation"] = rep.dirac ? std::string("dirac") : label_str(rep.label);
      x["dim"] = rep.dim();
      x["massive"] = e.massive();
      x["projection"] = matrix_json(projection_for(e).matrix);
      list.push_back(x);
    }
    j["equations"] = list;
    j["w_s"] = matrix_json(w_s());
    j["eta_minkowski"] = matrix_json(eta_minkowski());
    j["eta_spinor"] = matrix_json(eta_spinor());
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (EquationId e : eqs) {
    FiniteRep rep = rep_for(e);
    os << e.name() << ": " << (rep.dirac ? std::string("dirac") : label_str(rep.label)) << ", dim " << rep.dim()
       << (e.massive() ? ", massive" : "") << "\n";
    matrix_text(os, "projection", projection_for(e).matrix);
    os << "\n";
  }
  matrix_text(os, "w_s", w_s());
  matrix_text(os, "eta_minkowski", eta_minkowski());
  matrix_text(os, "eta_spinor", eta_spinor());
  return os.str();
}

} // namespace mnl
