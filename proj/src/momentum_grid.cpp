#include "mnl/momentum_grid.hpp"

#include <array>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "mnl/random.hpp"
#include "mnl/wave_equations.hpp"

namespace mnl {

std::string GridSpec::str() const {
  std::ostringstream os;
  os << n_r << "x" << n_theta << "x" << n_phi << "/" << r_max;
  if (kind == ShellKind::shell) os << "/m=" << mass;
  return os.str();
}

GridPtr build_grid(const GridSpec& spec, ChartGuard guard) {
  if (spec.n_r < 2 || spec.n_theta < 2 || spec.n_phi < 2 || !(spec.r_max > 0))
    throw InvalidArgument("build_grid: need n_* >= 2 and r_max > 0");
  if (spec.kind == ShellKind::shell && !(spec.mass > 0)) throw InvalidArgument("build_grid: shell needs a positive mass");

  auto grid = std::make_shared<ConeGrid>();
  grid->spec = spec;

  const QuadratureRule rt = gauss_legendre(spec.n_r, 0, 1);
  const QuadratureRule rc = gauss_legendre(spec.n_theta, -1, 1);
  const double dphi = 2 * M_PI / spec.n_phi;

  std::vector<Eigen::Vector3d> dirs;
  std::vector<double> dir_w;
  for (int it = 0; it < spec.n_theta; ++it) {
    double c = rc.x[it], s = std::sqrt(std::max(0.0, 1 - c * c));
    for (int ip = 0; ip < spec.n_phi; ++ip) {
      double phi = (ip + 0.5) * dphi;
      dirs.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
      dir_w.push_back(rc.w[it] * dphi);
    }
  }

  // Tilt the polar axis away from the excluded ray n = (0,0,-1): redraw until
  // every rotated direction keeps 1 + n_z above 10 delta_chart.
  Rng rng(spec.seed, "grid-rotation");
  const double margin = 10 * guard.delta_chart;
  Eigen::Matrix3d R;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw Error("build_grid: could not find an admissible axis rotation");
    Eigen::Matrix4d L = lorentz_matrix(rng.su2());
    R = L.bottomRightCorner<3, 3>();
    double worst = 2;
    for (const auto& d : dirs) worst = std::min(worst, 1 + (R * d)(2));
    if (spec.kind == ShellKind::shell || worst >= margin) break;
  }
  grid->axis_rotation = R;

  const std::size_t n = static_cast<std::size_t>(spec.n_r) * dirs.size();
  grid->nodes.reserve(n);
  grid->weights.reserve(n);
  for (int ir = 0; ir < spec.n_r; ++ir) {
    double t = rt.x[ir];
    double r = spec.r_max * t * t;
    double dr = rt.w[ir] * 2 * spec.r_max * t;
    double e = spec.kind == ShellKind::cone ? r : std::sqrt(r * r + spec.mass * spec.mass);
    double radial = dr * r * r / (2 * e);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      Eigen::Vector3d d = R * dirs[k];
      grid->nodes.emplace_back(e, r * d(0), r * d(1), r * d(2));
      grid->weights.push_back(radial * dir_w[k]);
    }
  }
  return grid;
}

SelfTest grid_self_test(const ConeGrid& grid) {
  if (grid.spec.kind != ShellKind::cone) throw InvalidArgument("grid_self_test: cone grids only");
  std::vector<double> terms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) terms[i] = grid.weights[i] * std::exp(-grid.nodes[i](0));
  SelfTest st;
  st.quadrature = pairwise_sum(terms);
  const double R = grid.spec.r_max;
  st.truncated_exact = 2 * M_PI * (1 - (1 + R) * std::exp(-R));
  st.tail = 2 * M_PI * (1 + R) * std::exp(-R);
  st.relative_error = std::abs(st.quadrature - st.truncated_exact) / st.truncated_exact;
  return st;
}

ConeFunction::ConeFunction(GridPtr grid, int dim) : grid_(std::move(grid)) {
  values_ = MatXc::Zero(dim, static_cast<Eigen::Index>(grid_->size()));
}

ConeFunction::ConeFunction(GridPtr grid, MatXc values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.cols()) != grid_->size())
    throw DimensionMismatch("ConeFunction: value count differs from node count");
}

namespace {

void require_compatible(const ConeFunction& a, const ConeFunction& b, const char* what) {
  if (a.grid() != b.grid()) throw InvalidArgument(std::string(what) + ": functions live on different grids");
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(what) + ": fibre dimensions differ");
}

} // namespace

ConeFunction& ConeFunction::operator+=(const ConeFunction& o) {
  require_compatible(*this, o, "ConeFunction +=");
  values_ += o.values_;
  return *this;
}

ConeFunction& ConeFunction::operator-=(const ConeFunction& o) {
  require_compatible(*this, o, "ConeFunction -=");
  values_ -= o.values_;
  return *this;
}

ConeFunction& ConeFunction::operator*=(cplx s) {
  values_ *= s;
  return *this;
}

ConeFunction ConeFunction::concat(const std::vector<const ConeFunction*>& parts) {
  if (parts.empty()) throw InvalidArgument("ConeFunction::concat: nothing to concatenate");
  int dim = 0;
  for (auto* p : parts) {
    if (p->grid() != parts.front()->grid()) throw InvalidArgument("ConeFunction::concat: grid mismatch");
    dim += p->dim();
  }
  ConeFunction out(parts.front()->grid(), dim);
  int off = 0;
  for (auto* p : parts) {
    out.values_.middleRows(off, p->dim()) = p->values_;
    off += p->dim();
  }
  return out;
}

ConeFunction ConeFunction::block(int offset, int dim) const {
  if (offset < 0 || offset + dim > this->dim()) throw DimensionMismatch("ConeFunction::block: out of range");
  return ConeFunction(grid_, MatXc(values_.middleRows(offset, dim)));
}

std::string to_string(InnerProductKind k) {
  switch (k) {
  case InnerProductKind::l2: return "l2";
  case InnerProductKind::beta_plus: return "beta_plus";
  case InnerProductKind::beta_minus: return "beta_minus";
  case InnerProductKind::weyl_net: return "weyl_net";
  case InnerProductKind::f_net: return "f_net";
  case InnerProductKind::eta_pm: return "eta_pm";
  case InnerProductKind::beta_pullback: return "beta_pullback";
  }
  return "?";
}

namespace {

int log2_dim(int dim, const char* what) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || n < 1) throw DimensionMismatch(std::string(what) + ": fibre dimension must be 2^n, n >= 1");
  return n;
}

// (x)^n B applied in place to a vector of length 2^n
template <typename V> void apply_tensor_power(const Spin2d& B, V& v, int n, int offset = 0) {
  const int dim = 1 << n;
  for (int k = 0; k < n; ++k) {
    const int stride = 1 << (n - 1 - k);
    for (int i = 0; i < dim; ++i) {
      if (i & stride) continue;
      cplx a = v[offset + i], b = v[offset + i + stride];
      v[offset + i] = B(0, 0) * a + B(0, 1) * b;
      v[offset + i + stride] = B(1, 0) * a + B(1, 1) * b;
    }
  }
}

Spin2d section_at(const ConeGrid& g, const Vec4& p, ChartGuard guard) {
  return g.spec.kind == ShellKind::cone ? massless_section(p, guard) : massive_section(p, g.spec.mass);
}

// (H^{-1})* H^{-1}
Spin2d beta1(const Spin2d& H) {
  Spin2d Hi = sl2_inverse(H);
  return Hi.adjoint() * Hi;
}

struct WeightPlan {
  InnerProductKind kind;
  int dim;
  int n = 0; // tensor order of a block
};

WeightPlan plan(InnerProductKind kind, int dim) {
  WeightPlan w{kind, dim};
  switch (kind) {
  case InnerProductKind::l2: break;
  case InnerProductKind::beta_plus:
  case InnerProductKind::beta_minus:
  case InnerProductKind::beta_pullback: w.n = log2_dim(dim, "inner_product"); break;
  case InnerProductKind::weyl_net:
    if (dim != 8) throw DimensionMismatch("inner_product: weyl_net needs four C^2 blocks");
    w.n = 1;
    break;
  case InnerProductKind::f_net:
    if (dim % 2) throw DimensionMismatch("inner_product: f_net needs two equal blocks");
    w.n = log2_dim(dim / 2, "inner_product");
    break;
  case InnerProductKind::eta_pm:
    if (dim != 4) throw DimensionMismatch("inner_product: eta_pm needs C^4");
    break;
  }
  return w;
}

// B(p) g for one node, written into out (length dim)
void apply_weight(const WeightPlan& w, const ConeGrid& grid, const Vec4& p, const cplx* g, cplx* out, ChartGuard guard) {
  for (int i = 0; i < w.dim; ++i) out[i] = g[i];
  switch (w.kind) {
  case InnerProductKind::l2: return;
  case InnerProductKind::eta_pm: {
    cplx a = out[0], d = out[3];
    out[0] = -d;
    out[3] = -a;
    return;
  }
  case InnerProductKind::beta_pullback: {
    Spin2d B = (grid.spec.kind == ShellKind::cone ? pdagger_massless(p) : pdagger_massive(p, grid.spec.mass)).conjugate();
    apply_tensor_power(B, out, w.n);
    return;
  }
  default: break;
  }
  Spin2d B = beta1(section_at(grid, p, guard));
  Spin2d Bc = B.conjugate();
  switch (w.kind) {
  case InnerProductKind::beta_plus: apply_tensor_power(B, out, w.n); break;
  case InnerProductKind::beta_minus: apply_tensor_power(Bc, out, w.n); break;
  case InnerProductKind::weyl_net:
    apply_tensor_power(B, out, 1, 0);
    apply_tensor_power(Bc, out, 1, 2);
    apply_tensor_power(B, out, 1, 4);
    apply_tensor_power(Bc, out, 1, 6);
    break;
  case InnerProductKind::f_net:
    apply_tensor_power(B, out, w.n, 0);
    apply_tensor_power(Bc, out, w.n, 1 << w.n);
    break;
  default: break;
  }
}

} // namespace

MatXc weight_matrix(InnerProductKind kind, const Vec4& p, int dim, ChartGuard guard) {
  // build column by column from the node-wise application
  WeightPlan w = plan(kind, dim);
  ConeGrid g;
  g.spec.kind = ShellKind::cone;
  MatXc M(dim, dim);
  std::vector<cplx> e(dim), out(dim);
  for (int c = 0; c < dim; ++c) {
    std::fill(e.begin(), e.end(), cplx(0));
    e[c] = 1;
    apply_weight(w, g, p, e.data(), out.data(), guard);
    for (int r = 0; r < dim; ++r) M(r, c) = out[r];
  }
  return M;
}

cplx inner_product_weighted(InnerProductKind kind, const ConeFunction& f, const ConeFunction& g,
                            const std::function<double(const Vec4&)>& s) {
  require_compatible(f, g, "inner_product");
  const ConeGrid& grid = *f.grid();
  WeightPlan w = plan(kind, f.dim());
  std::vector<cplx> terms(grid.size());
  parallel_for(grid.size(), [&](std::size_t b, std::size_t e) {
    std::vector<cplx> buf(w.dim);
    for (std::size_t i = b; i < e; ++i) {
      const Vec4& p = grid.nodes[i];
      const cplx* gv = g.values().col(static_cast<Eigen::Index>(i)).data();
      apply_weight(w, grid, p, gv, buf.data(), ChartGuard{});
      const cplx* fv = f.values().col(static_cast<Eigen::Index>(i)).data();
      cplx acc = 0;
      for (int k = 0; k < w.dim; ++k) acc += std::conj(fv[k]) * buf[k];
      double scale = grid.weights[i];
      if (s) scale *= s(p);
      terms[i] = scale * acc;
    }
  });
  return pairwise_sum(terms);
}

cplx inner_product(InnerProductKind kind, const ConeFunction& f, const ConeFunction& g) {
  return inner_product_weighted(kind, f, g, nullptr);
}

void write_cone_function(std::ostream& os, const ConeFunction& f) {
  const ConeGrid& g = *f.grid();
  os << "# mnl-cone v1 d=" << f.dim() << "\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int k = 0; k < 4; ++k) {
      put(g.nodes[i](k));
      os << ' ';
    }
    put(g.weights[i]);
    for (int k = 0; k < f.dim(); ++k) {
      os << ' ';
      put(f.at(i)(k).real());
      os << ' ';
      put(f.at(i)(k).imag());
    }
    os << '\n';
  }
  if (!os) throw Error("write_cone_function: stream failure");
}

ConeFunction read_cone_function(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error("read_cone_function: empty input");
  int dim = -1;
  if (std::sscanf(header.c_str(), "# mnl-cone v1 d=%d", &dim) != 1 || dim < 0)
    throw Error("read_cone_function: bad header '" + header + "'");
  auto grid = std::make_shared<ConeGrid>();
  std::vector<VecXc> vals;
  std::string line;
  while (is.peek() != '#' && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Vec4 p;
    double w;
    ls >> p(0) >> p(1) >> p(2) >> p(3) >> w;
    VecXc v(dim);
    for (int k = 0; k < dim; ++k) {
      double re, im;
      ls >> re >> im;
      v(k) = cplx(re, im);
    }
    if (!ls) throw Error("read_cone_function: malformed line '" + line + "'");
    grid->nodes.push_back(p);
    grid->weights.push_back(w);
    vals.push_back(v);
  }
  MatXc M(dim, static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = vals[i];
  return ConeFunction(grid, M);
}

} // namespace mnl
