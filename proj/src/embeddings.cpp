#include "mnl/embeddings.hpp"

#include <atomic>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace mnl {

Model Model::helicity(int n) {
  if (n < 1) throw InvalidArgument("Model::helicity: n must be >= 1");
  if (n == 1) return weyl();
  if (n == 2) return maxwell_F();
  return {ModelKind::helicity, n};
}

int Model::blocks() const {
  if (kind == ModelKind::vector_potential) return 1;
  return n % 2 ? 4 : 2;
}

EquationId Model::equation() const {
  switch (kind) {
  case ModelKind::weyl: return EquationId::weyl();
  case ModelKind::maxwell_F: return EquationId::maxwell_F();
  case ModelKind::helicity: return EquationId::helicity(n);
  case ModelKind::vector_potential: return EquationId::maxwell_A();
  }
  return EquationId::weyl();
}

std::string Model::name() const {
  switch (kind) {
  case ModelKind::weyl: return "weyl";
  case ModelKind::maxwell_F: return "maxwell_F";
  case ModelKind::helicity: return "helicity(" + std::to_string(n) + ")";
  case ModelKind::vector_potential: return "vector_potential";
  }
  return "?";
}

Model Model::parse(const std::string& s) {
  if (s == "weyl") return weyl();
  if (s == "maxwell_F" || s == "maxwell") return maxwell_F();
  if (s == "vector_potential") return vector_potential();
  int n = 0;
  if (std::sscanf(s.c_str(), "helicity(%d)", &n) == 1) return helicity(n);
  throw InvalidArgument("unknown model '" + s + "'");
}

namespace {

using Vec2c = Eigen::Matrix<cplx, 2, 1>;

// (x)^n v for a 2-vector
VecXc tensor_power(const Vec2c& v, int n) {
  VecXc out = VecXc::Ones(1);
  for (int k = 0; k < n; ++k) {
    VecXc next(out.size() * 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next(2 * i) = out(i) * v(0);
      next(2 * i + 1) = out(i) * v(1);
    }
    out = std::move(next);
  }
  return out;
}

// ((x)^n B) v in place, v of length 2^n
void apply_tensor_power(const Spin2d& B, cplx* v, int n) {
  const int dim = 1 << n;
  for (int k = 0; k < n; ++k) {
    const int stride = 1 << (n - 1 - k);
    for (int base = 0; base < dim; ++base) {
      if (base & stride) continue;
      cplx a = v[base], b = v[base + stride];
      v[base] = B(0, 0) * a + B(0, 1) * b;
      v[base + stride] = B(1, 0) * a + B(1, 1) * b;
    }
  }
}

VecXc apply_tensor_power(const Spin2d& B, VecXc v, int n) {
  apply_tensor_power(B, v.data(), n);
  return v;
}

// u = H e0 and r = row 1 of conj(H)^{-1}; the insert is (x)^n u r^T
struct RankOne {
  VecXc u;
  VecXc r; // stored as a column, contracted without conjugation
};

RankOne rank_one(int n, const Vec4& p, ChartGuard guard) {
  Spin2d H = massless_section(p, guard);
  Spin2d Hbi = sl2_inverse(Spin2d(H.conjugate()));
  Vec2c u = H.col(0);
  Vec2c r = Hbi.row(1).transpose();
  return {tensor_power(u, n), tensor_power(r, n)};
}

void require_test_dim(const Model& m, const TestFunction& f) {
  if (m.kind == ModelKind::vector_potential)
    throw InvalidArgument("the vector potential model has no test-function embedding");
  if (f.dim() != m.fibre_dim())
    throw DimensionMismatch("embed: test function dimension " + std::to_string(f.dim()) + " does not match fibre " +
                            std::to_string(m.fibre_dim()));
}

void require_same_grid(const ConeFunction& a, const ConeFunction& b, const char* what) {
  if (a.grid() != b.grid()) throw InvalidArgument(std::string(what) + ": functions live on different grids");
}

} // namespace

InnerProductKind block_kind(const Model& m, int block) {
  if (m.kind == ModelKind::vector_potential) return InnerProductKind::eta_pm;
  return Model::minus_block(block) ? InnerProductKind::beta_minus : InnerProductKind::beta_plus;
}

cplx model_inner_product(const EmbeddedVector& u, const EmbeddedVector& v) {
  if (!(u.model == v.model) || u.blocks.size() != v.blocks.size())
    throw InvalidArgument("model_inner_product: vectors belong to different models");
  cplx s = 0;
  for (std::size_t b = 0; b < u.blocks.size(); ++b)
    s += inner_product(block_kind(u.model, static_cast<int>(b)), u.blocks[b], v.blocks[b]);
  return s;
}

double model_norm(const EmbeddedVector& u) { return std::sqrt(std::max(0.0, model_inner_product(u, u).real())); }

MatXc embedding_insert(int n, const Vec4& p, ChartGuard guard) {
  Spin2d H = massless_section(p, guard);
  Spin2d N = Spin2d::Zero();
  N(0, 1) = 1;
  Spin2d M = H * N * sl2_inverse(Spin2d(H.conjugate()));
  return kron_power<double>(MatXc(M), n);
}

std::vector<VecXc> embed_at(const Model& m, const TestFunction& f, const Vec4& p, ChartGuard guard) {
  require_test_dim(m, f);
  RankOne k = rank_one(m.n, p, guard);
  cplx a = k.r.transpose() * f.fourier(p);
  cplx b = k.r.transpose() * f.fourier(Vec4(-p));
  std::vector<VecXc> out;
  out.reserve(m.blocks());
  out.push_back(k.u * a);
  out.push_back((k.u * b).conjugate());
  if (m.blocks() == 4) {
    out.push_back(k.u * b);
    out.push_back((k.u * a).conjugate());
  }
  return out;
}

EmbeddedVector embed(const Model& m, const TestFunction& f, GridPtr grid) {
  require_test_dim(m, f);
  EmbeddedVector v{m, {}};
  for (int b = 0; b < m.blocks(); ++b) v.blocks.emplace_back(grid, m.fibre_dim());
  std::mutex mu;
  std::string failure;
  parallel_for(grid->size(), [&](std::size_t lo, std::size_t hi) {
    try {
      for (std::size_t i = lo; i < hi; ++i) {
        auto vals = embed_at(m, f, grid->nodes[i]);
        for (int b = 0; b < m.blocks(); ++b) v.blocks[b].at(i) = vals[b];
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      failure = e.what();
    }
  });
  if (!failure.empty()) throw Error("embed: " + failure);
  return v;
}

ConeFunction gamma0(const ConeFunction& f) { return ConeFunction(f.grid(), MatXc(f.values().conjugate())); }

ConeFunction gamma1(const ConeFunction& phi, int n, int sign) {
  if (phi.dim() != (1 << n)) throw DimensionMismatch("gamma1: fibre is not (C^2)^n");
  if (sign != 1 && sign != -1) throw InvalidArgument("gamma1: sign must be +1 or -1");
  ConeFunction out(phi.grid(), phi.dim());
  const auto& g = *phi.grid();
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Spin2d H = massless_section(g.nodes[i]);
      Spin2d outer = sign > 0 ? Spin2d(H.conjugate()) : H;
      Spin2d inner = sl2_inverse(sign > 0 ? H : Spin2d(H.conjugate()));
      VecXc v = apply_tensor_power(inner, VecXc(phi.at(i)), n).conjugate();
      out.at(i) = apply_tensor_power(outer, v, n);
    }
  });
  return out;
}

EmbeddedVector gamma_w(const EmbeddedVector& v) {
  if (v.blocks.size() != 4) throw InvalidArgument("gamma_w: needs a four-block vector");
  const int n = v.model.n;
  return {v.model,
          {gamma1(v.blocks[3], n, -1), gamma1(v.blocks[2], n, 1), gamma1(v.blocks[1], n, -1), gamma1(v.blocks[0], n, 1)}};
}

EmbeddedVector basis_projection(const EmbeddedVector& v, bool complement) {
  if (v.blocks.size() != 4) throw InvalidArgument("basis_projection: needs a four-block vector");
  EmbeddedVector out = v;
  for (int b = 0; b < 4; ++b)
    if ((b < 2) == complement) out.blocks[b].values().setZero();
  return out;
}

double embedded_residual(const EmbeddedVector& v) {
  const EquationId eq = v.model.equation();
  double worst = 0;
  for (int b = 0; b < static_cast<int>(v.blocks.size()); ++b) {
    const ConeFunction& f = v.blocks[b];
    const auto& g = *f.grid();
    std::vector<double> part(g.size(), 0.0);
    parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        VecXc phi = f.at(i);
        double nrm = phi.norm();
        if (nrm == 0) continue;
        if (v.model.kind != ModelKind::vector_potential && Model::minus_block(b)) phi = phi.conjugate();
        part[i] = rwe_residual(eq, phi, g.nodes[i]).norm() / nrm;
      }
    });
    for (double r : part) worst = std::max(worst, r);
  }
  return worst;
}

ConeFunction canonical_rep_apply(int sign, int n, const GroupElement& g, const std::function<cplx(const Vec4&)>& chi,
                                 GridPtr grid, RepApplyStats* stats) {
  if (sign != 1 && sign != -1) throw InvalidArgument("canonical_rep_apply: sign must be +1 or -1");
  ConeFunction out(grid, 1);
  std::atomic<std::size_t> skipped{0};
  parallel_for(grid->size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec4& p = grid->nodes[i];
      try {
        auto W = wigner_element(g.A, p);
        Vec4 q = inverse_lorentz_action(g.A, p);
        cplx w = sign > 0 ? W.L(0, 0) : std::conj(W.L(0, 0));
        out.at(i)(0) = std::polar(1.0, -minkowski_pairing(p, g.a)) * std::pow(w, n) * chi(q);
      } catch (const OutOfChart&) {
        out.at(i)(0) = 0;
        ++skipped;
      }
    }
  });
  if (stats) stats->skipped = skipped;
  return out;
}

ConeFunction canonical_rep_apply(int sign, int n, const GroupElement& g, const ConeFunction& chi) {
  if (sign != 1 && sign != -1) throw InvalidArgument("canonical_rep_apply: sign must be +1 or -1");
  if (chi.dim() != 1) throw DimensionMismatch("canonical_rep_apply: scalar data expected");
  Eigen::Matrix4d Lam = lorentz_matrix(g.A);
  if ((Lam - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("canonical_rep_apply: sampled data only admits elements with Lambda_A = 1");
  // A = +-1 here, so L = A at every node
  cplx w = sign > 0 ? g.A(0, 0) : std::conj(g.A(0, 0));
  cplx wn = std::pow(w, n);
  ConeFunction out(chi.grid(), 1);
  const auto& nodes = chi.grid()->nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.at(i)(0) = std::polar(1.0, -minkowski_pairing(nodes[i], g.a)) * wn * chi.at(i)(0);
  return out;
}

ConeFunction iso_to_scalar(int sign, int n, const ConeFunction& phi, double tol) {
  if (sign != 1 && sign != -1) throw InvalidArgument("iso_to_scalar: sign must be +1 or -1");
  if (phi.dim() != (1 << n)) throw DimensionMismatch("iso_to_scalar: fibre is not (C^2)^n");
  ConeFunction out(phi.grid(), 1);
  const auto& g = *phi.grid();
  std::vector<double> defect(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Spin2d H = massless_section(g.nodes[i]);
      if (sign < 0) H = H.conjugate();
      VecXc v = apply_tensor_power(sl2_inverse(H), VecXc(phi.at(i)), n);
      out.at(i)(0) = v(0);
      double nrm = v.norm();
      if (nrm > 0) defect[i] = v.tail(v.size() - 1).norm() / nrm;
    }
  });
  double worst = *std::max_element(defect.begin(), defect.end());
  if (worst > tol)
    throw InvalidArgument("iso_to_scalar: input is off the solution space (relative residual " + std::to_string(worst) +
                          ")");
  return out;
}

ConeFunction scalar_to_solution(int sign, int n, const ConeFunction& chi) {
  if (sign != 1 && sign != -1) throw InvalidArgument("scalar_to_solution: sign must be +1 or -1");
  if (chi.dim() != 1) throw DimensionMismatch("scalar_to_solution: scalar data expected");
  ConeFunction out(chi.grid(), 1 << n);
  const auto& g = *chi.grid();
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Spin2d H = massless_section(g.nodes[i]);
      if (sign < 0) H = H.conjugate();
      out.at(i) = tensor_power(H.col(0), n) * chi.at(i)(0);
    }
  });
  return out;
}

std::vector<VecXc> v_apply_at(const Model& m, const GroupElement& g, const TestFunction& f, const Vec4& p,
                              ChartGuard guard) {
  Vec4 q = inverse_lorentz_action(g.A, p);
  if (!in_chart(q, guard)) throw OutOfChart("v_apply_at: Lambda^{-1} p left the chart");
  auto vals = embed_at(m, f, q, guard);
  const double pa = minkowski_pairing(p, g.a);
  Spin2d Ab = g.A.conjugate();
  for (int b = 0; b < static_cast<int>(vals.size()); ++b) {
    apply_tensor_power(Model::minus_block(b) ? Ab : g.A, vals[b].data(), m.n);
    vals[b] *= std::polar(1.0, Model::reflected_block(b) ? pa : -pa);
  }
  return vals;
}

IntertwiningResult intertwining_defect(const Model& m, const GroupElement& g, const TestFunction& f,
                                       const ConeGrid& grid) {
  require_test_dim(m, f);
  TestFunctionPtr base(&f, [](const TestFunction*) {});
  TransformedTestFunction tf(base, g, m.test_label());
  const std::size_t N = grid.size();
  std::vector<double> diff(N, 0.0), size(N, 0.0);
  std::vector<char> skip(N, 0);
  parallel_for(N, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec4& p = grid.nodes[i];
      std::vector<VecXc> lhs, rhs;
      try {
        rhs = v_apply_at(m, g, f, p);
      } catch (const OutOfChart&) {
        skip[i] = 1;
        continue;
      }
      lhs = embed_at(m, tf, p);
      auto direct = embed_at(m, f, p);
      double d = 0, s = 0;
      for (std::size_t b = 0; b < lhs.size(); ++b) {
        d = std::max(d, (lhs[b] - rhs[b]).norm());
        s = std::max(s, direct[b].norm());
      }
      diff[i] = d;
      size[i] = s;
    }
  });
  IntertwiningResult r;
  r.nodes = N;
  double dmax = 0;
  for (std::size_t i = 0; i < N; ++i) {
    r.skipped += skip[i];
    dmax = std::max(dmax, diff[i]);
    r.scale = std::max(r.scale, size[i]);
  }
  if (r.skipped * 100 > N) throw OutOfChart("intertwining_defect: more than 1% of the nodes left the chart");
  r.defect = r.scale > 0 ? dmax / r.scale : dmax;
  return r;
}

CausalityResult causality_pairing(const Model& m, const TestFunction& f, const TestFunction& k, GridPtr grid) {
  if (m.kind == ModelKind::vector_potential) throw InvalidArgument("causality_pairing: not defined for this model");
  EmbeddedVector a = embed(m, f, grid), b = embed(m, k, grid);
  CausalityResult r;
  cplx ip = model_inner_product(a, b);
  r.pairing = m.fermionic() ? ip : cplx(ip.imag(), 0);
  r.norm_f = model_norm(a);
  r.norm_k = model_norm(b);
  return r;
}

MatXc pauli_jordan_beta(int n, const Vec4& p) {
  if (n < 0) throw InvalidArgument("pauli_jordan_beta: n must be >= 0");
  if (n == 0) return MatXc::Ones(1, 1);
  return kron_power<double>(MatXc(pdagger_massless(p).conjugate()), n);
}

namespace {

// Panels on [0, 1] refined geometrically towards 0 down to width h.
std::vector<std::pair<double, double>> graded_panels(double h) {
  std::vector<std::pair<double, double>> out;
  double lo = 0, hi = std::min(h, 1.0);
  out.emplace_back(lo, hi);
  while (hi < 1) {
    lo = hi;
    hi = std::min(1.0, 2 * hi);
    out.emplace_back(lo, hi);
  }
  return out;
}

} // namespace

PauliJordanResult pauli_jordan_regulated(const Vec4& x, int n, std::vector<double> epsilons) {
  if (x(0) != 0) throw InvalidArgument("pauli_jordan_regulated: x must be purely spatial");
  const double a = x.tail<3>().norm();
  if (!(a > 0)) throw InvalidArgument("pauli_jordan_regulated: x must be nonzero");
  if (epsilons.size() < 3) throw InvalidArgument("pauli_jordan_regulated: need at least three regulators");
  Eigen::Vector3d ex = x.tail<3>() / a;
  Eigen::Vector3d e1 = ex.unitOrthogonal(), e2 = ex.cross(e1);
  const int dim = 1 << n;
  const int nphi = 32;
  const double fact = std::tgamma(n + 2.0);
  const double sgn = n % 2 ? 1.0 : -1.0;
  auto gl = gauss_legendre(20, 0, 1);

  // angular average of beta_n at polar cosine c, times 2 pi
  auto ring = [&](double c) {
    MatXc s = MatXc::Zero(dim, dim);
    double st = std::sqrt(std::max(0.0, 1 - c * c));
    for (int k = 0; k < nphi; ++k) {
      double ph = 2 * M_PI * k / nphi;
      Eigen::Vector3d nh = c * ex + st * (std::cos(ph) * e1 + std::sin(ph) * e2);
      Vec4 p(1, nh(0), nh(1), nh(2));
      s += pauli_jordan_beta(n, p);
    }
    return MatXc(s * (2 * M_PI / nphi));
  };

  PauliJordanResult r;
  r.epsilons = epsilons;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    double eps = epsilons[e];
    MatXc val = MatXc::Zero(dim, dim), single = MatXc::Zero(dim, dim);
    for (int side : {-1, 1}) {
      for (auto [lo, hi] : graded_panels(eps / a)) {
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
          double c = side * (lo + (hi - lo) * gl.x[j]);
          double w = (hi - lo) * gl.w[j];
          MatXc B = ring(c);
          cplx plus = std::pow(cplx(eps, a * c), -(n + 2));
          cplx minus = std::pow(cplx(eps, -a * c), -(n + 2));
          val += (0.5 * fact * w * (plus + sgn * minus)) * B;
          single += (0.5 * fact * w * plus) * B;
        }
      }
    }
    r.values.push_back(val);
    if (e == 0) r.scale = single.norm();
  }
  for (std::size_t e = 0; e + 1 < epsilons.size(); ++e) {
    double ratio = epsilons[e] / epsilons[e + 1];
    r.extrapolants.push_back((ratio * r.values[e + 1] - r.values[e]) / (ratio - 1));
  }
  r.extrapolant = r.extrapolants.back();
  r.error = (r.extrapolants.back() - r.extrapolants[r.extrapolants.size() - 2]).norm();
  return r;
}

ConeFunction lift_vector_potential(GridPtr grid, const std::function<cplx(const Vec4&)>& c0,
                                   const std::function<cplx(const Vec4&)>& c1,
                                   const std::function<cplx(const Vec4&)>& c2) {
  return ConeFunction::sample(grid, 4, [&](const Vec4& p) {
    Spin2d H = massless_section(p);
    Spin2d Hb = H.conjugate();
    VecXc c(4);
    c << c0(p), c1(p), c2(p), 0;
    // D = H (x) conj(H): first factor most significant
    VecXc out(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx s = 0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) s += H(i, k) * Hb(j, l) * c(2 * k + l);
        out(2 * i + j) = s;
      }
    return out;
  });
}

namespace {

// chi = D(H_p)^{-1} phi with D = H (x) conj(H); checks that chi_3 vanishes.
ConeFunction vector_potential_coords(const ConeFunction& phi, double tol) {
  if (phi.dim() != 4) throw DimensionMismatch("vector potential data must be C^2 (x) C^2");
  const auto& g = *phi.grid();
  ConeFunction out(phi.grid(), 2);
  std::vector<double> defect(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Spin2d Hi = sl2_inverse(massless_section(g.nodes[i]));
      Spin2d Hbi = Hi.conjugate();
      VecXc v = phi.at(i);
      VecXc c(4);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          cplx s = 0;
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) s += Hi(a, k) * Hbi(b, l) * v(2 * k + l);
          c(2 * a + b) = s;
        }
      out.at(i) << c(1), c(2);
      double nrm = c.norm();
      if (nrm > 0) defect[i] = std::abs(c(3)) / nrm;
    }
  });
  double worst = *std::max_element(defect.begin(), defect.end());
  if (worst > tol)
    throw InvalidArgument("vector potential input is off the solution space (relative residual " +
                          std::to_string(worst) + ")");
  return out;
}

} // namespace

VectorPotentialPairing vector_potential_pairings(const ConeFunction& phi, const ConeFunction& psi, double tol) {
  require_same_grid(phi, psi, "vector_potential_pairings");
  VectorPotentialPairing r;
  r.chi_phi = vector_potential_coords(phi, tol);
  r.chi_psi = vector_potential_coords(psi, tol);
  r.eta_pair = inner_product(InnerProductKind::eta_pm, phi, psi);
  r.factor_pair = inner_product(InnerProductKind::l2, r.chi_phi, r.chi_psi);
  return r;
}

ConeFunction phi_af(const EmbeddedVector& f) {
  if (f.model.kind != ModelKind::maxwell_F || f.blocks.size() != 2)
    throw InvalidArgument("phi_af: needs a Maxwell F vector");
  ConeFunction chip = iso_to_scalar(1, 2, f.blocks[0]);
  ConeFunction chim = iso_to_scalar(-1, 2, f.blocks[1]);
  const auto& g = *f.grid();
  ConeFunction out(f.grid(), 4);
  parallel_for(g.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Spin2d H = massless_section(g.nodes[i]);
      Spin2d Hb = H.conjugate();
      cplx c1 = chip.at(i)(0), c2 = chim.at(i)(0);
      // D(H)(0, c1, c2, 0): column (0,1) carries c1, column (1,0) carries c2
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.at(i)(2 * a + b) = H(a, 0) * Hb(b, 1) * c1 + H(a, 1) * Hb(b, 0) * c2;
    }
  });
  return out;
}

double continuity_constant() {
  // 4 pi int_0^inf p^2 (1 + p^2)^{-4} dp with p = tan t
  auto q = gauss_legendre(64, 0, M_PI / 2);
  double s = 0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    double st = std::sin(q.x[i]), ct = std::cos(q.x[i]);
    s += q.w[i] * st * st * ct * ct * ct * ct;
  }
  return 4 * M_PI * s;
}

ContinuityResult continuity_bound(const TestFunction& f, GridPtr grid, SeminormOptions opt) {
  EmbeddedVector v = embed(Model::weyl(), f, grid);
  ContinuityResult r;
  r.lhs = norm(InnerProductKind::beta_plus, v.blocks[0]);
  r.lhs *= r.lhs;
  double s = 0;
  for (double c : schwartz_seminorms(f, opt)) s += c;
  r.rhs = continuity_constant() * s * s;
  return r;
}

void write_embedded(std::ostream& os, const EmbeddedVector& v) {
  const int n = static_cast<int>(v.blocks.size());
  for (int b = 0; b < n; ++b) {
    os << "# mnl-block " << b << " of " << n << " model=" << v.model.name() << "\n";
    write_cone_function(os, v.blocks[b]);
  }
}

EmbeddedVector read_embedded(std::istream& is) {
  EmbeddedVector v;
  int expected = -1;
  std::string line;
  while (is.peek() != EOF && std::getline(is, line)) {
    if (line.empty()) continue;
    int b = -1, n = -1;
    char name[64] = {0};
    if (std::sscanf(line.c_str(), "# mnl-block %d of %d model=%63s", &b, &n, name) != 3)
      throw Error("read_embedded: bad block header '" + line + "'");
    Model m = Model::parse(name);
    if (expected < 0) {
      expected = n;
      v.model = m;
    }
    if (n != expected || b != static_cast<int>(v.blocks.size()) || !(m == v.model))
      throw Error("read_embedded: inconsistent block header '" + line + "'");
    ConeFunction f = read_cone_function(is);
    if (!v.blocks.empty()) {
      const auto& g0 = *v.blocks.front().grid();
      const auto& g1 = *f.grid();
      if (g0.nodes.size() != g1.nodes.size()) throw Error("read_embedded: blocks have different grids");
      for (std::size_t i = 0; i < g0.size(); ++i)
        if (g0.nodes[i] != g1.nodes[i] || g0.weights[i] != g1.weights[i])
          throw Error("read_embedded: blocks have different grids");
      f = ConeFunction(v.blocks.front().grid(), f.values());
    }
    v.blocks.push_back(std::move(f));
  }
  if (expected < 0 || static_cast<int>(v.blocks.size()) != expected) throw Error("read_embedded: missing blocks");
  return v;
}

} // namespace mnl
