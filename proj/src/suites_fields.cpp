// Suites for the field layer: grids and test functions, the Weyl and Maxwell
// embeddings, the vector potential, and the Fock-space fields.

#include <cmath>

#include "mnl/embeddings.hpp"
#include "mnl/errors.hpp"
#include "mnl/fock.hpp"
#include "suites.hpp"

namespace mnl::suites {

namespace {

double max_block_diff(const EmbeddedVector& a, const EmbeddedVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) d = std::max(d, max_diff(a.blocks[i].values(), b.blocks[i].values()));
  return d;
}

double max_block_abs(const EmbeddedVector& a) {
  double d = 0;
  for (const auto& b : a.blocks) d = std::max(d, b.values().cwiseAbs().maxCoeff());
  return d;
}

EmbeddedVector random_blocks(Rng& rng, Model m, GridPtr g) {
  EmbeddedVector v{m, {}};
  for (int b = 0; b < m.blocks(); ++b) {
    MatXc vals(m.fibre_dim(), static_cast<Eigen::Index>(g->size()));
    for (std::size_t i = 0; i < g->size(); ++i)
      for (int k = 0; k < m.fibre_dim(); ++k)
        vals(k, static_cast<Eigen::Index>(i)) = rng.complex_normal() * std::exp(-0.3 * g->nodes[i](0));
    v.blocks.emplace_back(g, std::move(vals));
  }
  return v;
}

ConeFunction scalar(GridPtr g, const std::function<cplx(const Vec4&)>& f) {
  return ConeFunction::sample(g, 1, [&](const Vec4& p) { return (VecXc(1) << f(p)).finished(); });
}

VecXc pol(std::initializer_list<cplx> xs) {
  VecXc v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

// Polarizations of the causality bumps.
VecXc pol2() { return pol({1.0, cplx(0.3, -0.5)}); }
VecXc pol4() { return pol({1.0, cplx(0.3, -0.5), cplx(0.3, -0.5), 0.2}); }

double residual_check(Context& c, const char* stream, int n) {
  Rng rng = c.rng(stream);
  Model m = Model::helicity(n);
  double worst = 0;
  for (int t = 0; t < 3; ++t) {
    auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
    worst = std::max(worst, embedded_residual(embed(m, *f, c.grid())));
  }
  return worst;
}

// max |I(derivative data)| relative to max p0 |f^|, on every 7th node
double derivative_check(Context& c, const char* stream, int n) {
  Rng rng = c.rng(stream);
  Model m = Model::helicity(n);
  auto h = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
  DerivativeData f(h);
  auto g = c.grid();
  double worst = 0, scale = 0;
  for (std::size_t i = 0; i < g->size(); i += 7) {
    const Vec4& p = g->nodes[i];
    for (const auto& v : embed_at(m, f, p)) worst = std::max(worst, v.norm());
    scale = std::max(scale, p(0) * std::max(f.fourier(p).norm(), f.fourier(Vec4(-p)).norm()));
  }
  return worst / scale;
}

double intertwining_check(Context& c, const char* stream, Model m, int count) {
  Rng rng = c.rng(stream);
  auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
  double worst = 0;
  for (int t = 0; t < count; ++t)
    worst = std::max(worst, intertwining_defect(m, random_group_element(rng, 1.0, 1.0), *f, *c.grid()).defect);
  return worst;
}

double e2_conjugate_check(Context& c, const char* stream, Model m) {
  Rng rng = c.rng(stream);
  auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
  double worst = 0;
  for (int t = 0; t < 5; ++t) {
    Spin2d B = rng.sl2c(0.5);
    GroupElement e{B * rng.e2() * sl2_inverse(B), rng.vec4(1.0)};
    worst = std::max(worst, intertwining_defect(m, e, *f, *c.grid()).defect);
  }
  return worst;
}

// Phi_+- round trip and isometry for helicity n on smooth scalar data.
void phi_checks(Context& c, const std::string& prefix, int n) {
  auto g = c.grid();
  auto chi = scalar(g, [](const Vec4& p) { return std::exp(-0.4 * p(0)) * cplx(std::cos(p(1)), p(3) / 4); });
  c.grid_check(prefix + ".phi_roundtrip", "scalar data lifted by Phi^{-1} and extracted by Phi is unchanged", 1e-12,
               "<=", [&] {
                 double worst = 0;
                 for (int sign : {1, -1})
                   worst = std::max(worst, max_diff(iso_to_scalar(sign, n, scalar_to_solution(sign, n, chi)).values(),
                                                    chi.values()));
                 return worst / chi.values().cwiseAbs().maxCoeff();
               });
  c.grid_check(prefix + ".phi_isometry", "Phi_+ and Phi_- are isometric from beta_+- onto l2", 1e-10, "<=", [&] {
    double worst = 0;
    double b = inner_product(InnerProductKind::l2, chi, chi).real();
    for (int sign : {1, -1}) {
      auto kind = sign > 0 ? InnerProductKind::beta_plus : InnerProductKind::beta_minus;
      ConeFunction phi = scalar_to_solution(sign, n, chi);
      worst = std::max(worst, std::abs(inner_product(kind, phi, phi).real() - b) / b);
    }
    return worst;
  });
}

double pauli_jordan_ratio(int n) {
  double worst = 0;
  for (Vec4 x : {Vec4(0, 2, 0, 0), Vec4(0, 1.3, 0.4, -0.2), Vec4(0, 0, 0, 0.7)}) {
    auto r = pauli_jordan_regulated(x, n);
    worst = std::max(worst, r.extrapolant.norm() / std::max(3 * r.error, 1e-3 * r.scale));
  }
  return worst;
}

// chi = Phi_+ of block 0 against Fourier transform, restriction and the
// row-(2) multiplier of conj(H_p)^{-1}, written out directly.
double chain_check(Context& c, const char* stream, int n) {
  Rng rng = c.rng(stream);
  Model m = Model::helicity(n);
  auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
  auto g = c.grid();
  ConeFunction chi = iso_to_scalar(1, n, embed(m, *f, g).blocks[0]);
  double worst = 0, scale = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Vec4& p = g->nodes[i];
    Eigen::Matrix2cd Hbi = Eigen::Matrix2cd(massless_section_formula(p).conjugate()).inverse();
    MatXc row = Hbi.row(1);
    MatXc mult = row;
    for (int k = 1; k < n; ++k) mult = kron<double>(mult, row);
    cplx expect = (mult * f->fourier(p))(0);
    worst = std::max(worst, std::abs(chi.at(i)(0) - expect));
    scale = std::max(scale, std::abs(expect));
  }
  return worst / scale;
}

struct CausalityNumbers {
  double spacelike = 0, imaginary = 0, doubled = 0, control = 0;
};

void causality_checks(Context& c, const std::string& prefix, Model m, const std::string& what) {
  VecXc v = m.n == 1 ? pol2() : pol4();
  CompactBump f(Vec4(0, 2, 0, 0), 0.5, v), k(Vec4(0, -2, 0, 0), 0.5, v);
  CompactBump a(Vec4(0, 0, 0, 0), 0.5, v), b(Vec4(2, 2, 0, 0), 0.5, v);
  auto nan = std::numeric_limits<double>::quiet_NaN();
  double base = nan;
  c.grid_check(prefix + ".causality_spacelike",
               what + " vanishes for bumps at (0,+-2,0,0) of radius 1/2, relative to the two norms", 1e-5, "<=", [&] {
                 if (!spacelike_separated(f, k)) throw Error("bumps are not spacelike separated");
                 auto r = causality_pairing(m, f, k, c.grid());
                 base = r.relative();
                 return base;
               });
  if (m.fermionic())
    c.grid_check(prefix + ".causality_real", "the spacelike Weyl pairing is real", 1e-12, "<=", [&] {
      auto r = causality_pairing(m, f, k, c.grid());
      return std::abs(r.pairing.imag()) / (r.norm_f * r.norm_k);
    });
  c.check(prefix + ".causality_doubling", "the spacelike pairing shrinks at least 4x when every grid count doubles", 4,
          ">=",
          [&] {
            if (std::isnan(base)) throw Error("no default-grid value");
            return base / causality_pairing(m, f, k, c.doubled_grid()).relative();
          },
          c.spec().doubled().str());
  c.grid_check(prefix + ".causality_control",
               "a null-separated control pair stays far above 10x the spacelike bound", 1e-4, ">=", [&] {
                 if (spacelike_separated(a, b)) throw Error("control pair is spacelike separated");
                 return causality_pairing(m, a, b, c.grid()).relative();
               });
}

} // namespace

void weyl(Context& c) {
  auto g = c.grid();
  const GridSpec s = c.spec();

  // grid and test-function plumbing used by every field check
  c.grid_check("grid.node_count", "node count is n_r n_theta n_phi", 0, "<=",
               [&] { return std::abs(double(g->size()) - double(s.n_r) * s.n_theta * s.n_phi); });
  c.grid_check("grid.chart_margin", "every node is at least 10 delta_chart away from the excluded ray", 1e-7, ">=", [&] {
    double worst = 1;
    for (const auto& p : g->nodes) worst = std::min(worst, chart_coordinate(p));
    return worst;
  });
  c.grid_check("grid.self_test", "sum w e^{-p0} matches 2 pi (1 - (1 + r_max) e^{-r_max})", 1e-8, "<=",
               [&] { return grid_self_test(*g).relative_error; });
  c.check("grid.weights_psd", "beta-type weight matrices are positive semidefinite", 1e-12, "<=", [&] {
    Rng rng = c.rng("grid-weights");
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      Vec4 p = rng.chart_point(0.1, 10, 1e-3);
      for (auto [k, d] : {std::pair{InnerProductKind::beta_plus, 2}, std::pair{InnerProductKind::beta_minus, 4},
                          std::pair{InnerProductKind::weyl_net, 8}, std::pair{InnerProductKind::f_net, 8},
                          std::pair{InnerProductKind::beta_pullback, 4}}) {
        MatXc B = weight_matrix(k, p, d);
        Eigen::SelfAdjointEigenSolver<MatXc> es(B);
        worst = std::max(worst, -es.eigenvalues().minCoeff() / B.norm());
      }
    }
    return worst;
  });
  c.check("grid.pullback_rank_one", "the pulled-back weights (x)^n conj(P-dagger) have rank one", 1e-10, "<=", [&] {
    Rng rng = c.rng("grid-rank");
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      Vec4 p = rng.chart_point(0.1, 10, 1e-3);
      for (int d : {2, 4}) {
        Eigen::JacobiSVD<MatXc> svd(weight_matrix(InnerProductKind::beta_pullback, p, d));
        worst = std::max(worst, svd.singularValues()(1) / svd.singularValues()(0));
      }
    }
    return worst;
  });
  c.check("grid.fnet_display", "F-net weight equals the displayed degree-2 matrix (two entries conjugated)", 1e-11,
          "<=", [&] {
            Rng rng = c.rng("grid-fnet");
            double worst = 0;
            for (int i = 0; i < 100; ++i) {
              Vec4 p = rng.chart_point(0.1, 10, 1e-3);
              cplx a = p(0) - p(3), b = p(0) + p(3), z(p(1), p(2)), zb = std::conj(z);
              MatXc M(4, 4);
              M << a * a, -a * z, -a * z, z * z,
                   -a * zb, b * a, b * a, -b * z,
                   -a * zb, b * a, b * a, -b * z,
                   zb * zb, -b * zb, -b * zb, b * b;
              M /= 4.0;
              worst = std::max(worst, max_diff(weight_matrix(InnerProductKind::beta_pullback, p, 4), M) / (p(0) * p(0)));
            }
            return worst;
          });
  auto chi1 = [](const Vec4& p) { return cplx(std::exp(-0.3 * p(0)), 0.2 * p(1)) * std::exp(-0.2 * p(0)); };
  auto chi2 = [](const Vec4& p) { return cplx(p(2), 1.0) * std::exp(-0.5 * p(0)); };
  c.grid_check("grid.beta_plus_lift", "beta_plus on H_p (chi, 0) equals l2 on chi", 1e-10, "<=", [&] {
    auto l1 = ConeFunction::sample(g, 2, [&](const Vec4& p) -> VecXc { return massless_section(p).col(0) * chi1(p); });
    auto l2 = ConeFunction::sample(g, 2, [&](const Vec4& p) -> VecXc { return massless_section(p).col(0) * chi2(p); });
    cplx a = inner_product(InnerProductKind::beta_plus, l1, l2);
    cplx b = inner_product(InnerProductKind::l2, scalar(g, chi1), scalar(g, chi2));
    return std::abs(a - b) / std::abs(b);
  });
  c.grid_check("grid.conjugate_symmetry", "<f,g> = conj <g,f> for the self-adjoint weights", 1e-13, "<=", [&] {
    Rng rng = c.rng("grid-symmetry");
    EmbeddedVector u = random_blocks(rng, Model::weyl(), g), v = random_blocks(rng, Model::weyl(), g);
    double worst = 0;
    for (auto k : {InnerProductKind::l2, InnerProductKind::beta_plus, InnerProductKind::beta_minus,
                   InnerProductKind::beta_pullback}) {
      cplx x = inner_product(k, u.blocks[0], v.blocks[0]), y = inner_product(k, v.blocks[0], u.blocks[0]);
      worst = std::max(worst, std::abs(x - std::conj(y)) / std::abs(x));
    }
    return worst;
  });
  c.check("testfn.spacelike_examples", "bumps at (0,+-2,0,0) are spacelike; identical and timelike pairs are not", 0,
          "<=", [] {
            VecXc v = pol({1.0, 0.0});
            CompactBump a(Vec4(0, 2, 0, 0), 0.5, v), b(Vec4(0, -2, 0, 0), 0.5, v);
            CompactBump t0(Vec4(0, 0, 0, 0), 0.5, v), t1(Vec4(3, 0, 0, 0), 0.5, v);
            return double(!spacelike_separated(a, b)) + double(spacelike_separated(a, a)) +
                   double(spacelike_separated(t0, t1));
          });
  c.check("testfn.bump_support", "a bump vanishes exactly outside its ball", 0, "<=", [] {
    CompactBump b(Vec4(0.5, 1, 0, -1), 0.5, pol({1.0, cplx(0.5, -0.5)}));
    return b.position(Vec4(0.5, 1.5, 0, -1)).norm() + b.position(Vec4(0.5, 1.6, 0, -1)).norm();
  });
  c.check("testfn.translation_phase", "translations change the Fourier transform by a phase only", 1e-14, "<=", [&] {
    Rng rng = c.rng("testfn-translation");
    auto base = std::make_shared<CompactBump>(Vec4(0.2, -0.3, 0.1, 0.4), 0.5, pol({1.0, cplx(0.3, 0.7)}));
    GroupElement t;
    t.a = Vec4(0.3, 1.0, -2.0, 0.5);
    auto f = covariant_transform(t, base, {0, 1});
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      Vec4 p = rng.vec4(3.0);
      double n = base->fourier(p).norm();
      worst = std::max(worst, std::abs(f->fourier(p).norm() - n) / n);
    }
    return worst;
  });
  c.check("testfn.seminorm_homogeneity", "the (4,0) seminorm is homogeneous", 1e-12, "<=", [&] {
    Rng rng = c.rng("testfn-seminorm");
    auto f = random_packet(rng, 2, 1.0, 0.5);
    double s1 = schwartz_seminorm(*f);
    return std::abs(schwartz_seminorm(LinearCombination({2.0}, {f})) - 2 * s1) / s1;
  });
  c.check("testfn.seminorm_lattice", "doubling the seminorm search lattice moves the value by at most 0.1%", 1e-3, "<=",
          [&] {
            Rng rng = c.rng("testfn-seminorm");
            auto f = random_packet(rng, 2, 1.0, 0.5);
            SeminormOptions fine;
            fine.lattice = 36;
            double s1 = schwartz_seminorm(*f);
            return std::abs(schwartz_seminorm(*f, fine) - s1) / s1;
          });

  // the Weyl embedding
  c.grid_check("weyl.residual.n1", "every embedded Weyl block solves the Weyl equation (relative residual)", 1e-10, "<=",
               [&] { return residual_check(c, "weyl-residual", 1); });
  c.grid_check("weyl.residual.n3", "every embedded helicity-3/2 block solves its equation", 1e-10, "<=",
               [&] { return residual_check(c, "weyl-residual-3", 3); });
  c.grid_check("weyl.derivative_data.n1", "the embedding annihilates derivative data d^{CC'} h_C", 1e-9, "<=",
               [&] { return derivative_check(c, "weyl-derivative", 1); });
  c.grid_check("weyl.derivative_data.n3", "the helicity-3/2 embedding annihilates derivative data", 1e-9, "<=",
               [&] { return derivative_check(c, "weyl-derivative-3", 3); });

  c.grid_check("weyl.gamma_invariance", "Gamma_W I_W f = I_W f", 1e-10, "<=", [&] {
    Rng rng = c.rng("weyl-gamma");
    double worst = 0;
    for (int t = 0; t < 3; ++t) {
      EmbeddedVector w = embed(Model::weyl(), *random_packet(rng, 2, 1.0, 1.0), g);
      worst = std::max(worst, max_block_diff(gamma_w(w), w) / max_block_abs(w));
    }
    return worst;
  });
  Rng grng = c.rng("weyl-gamma-structure");
  EmbeddedVector u = random_blocks(grng, Model::weyl(), g), v = random_blocks(grng, Model::weyl(), g);
  c.grid_check("weyl.gamma_involution", "Gamma_W is an involution", 1e-12, "<=",
               [&] { return max_block_diff(gamma_w(gamma_w(u)), u) / max_block_abs(u); });
  c.grid_check("weyl.gamma_antiunitary", "<Gamma u, Gamma v> = <v, u>", 1e-10, "<=", [&] {
    return std::abs(model_inner_product(gamma_w(u), gamma_w(v)) - model_inner_product(v, u)) /
           (model_norm(u) * model_norm(v));
  });

  c.grid_check("weyl.intertwining", "I_W T(g) f = V(g) I_W f for 50 random g with rapidity <= 1", 1e-8, "<=",
               [&] { return intertwining_check(c, "weyl-intertwining", Model::weyl(), 50); });
  c.grid_check("weyl.intertwining_e2", "intertwining for conjugates of little-group elements", 1e-8, "<=",
               [&] { return e2_conjugate_check(c, "weyl-intertwining-e2", Model::weyl()); });

  auto c1 = [](const Vec4& p) { return std::exp(-p(0) * p(0) / 4) * cplx(1, p(1) / 3); };
  auto c2 = [](const Vec4& p) { return std::exp(-p(0) * p(0) / 5) * cplx(p(2), 0.5); };
  c.grid_check("weyl.canonical_identity", "U(1) chi = chi", 1e-12, "<=", [&] {
    ConeFunction s1 = scalar(g, c1);
    double worst = 0;
    for (int sign : {1, -1})
      worst = std::max(worst, max_diff(canonical_rep_apply(sign, 1, GroupElement{}, c1, g).values(), s1.values()));
    return worst / s1.values().cwiseAbs().maxCoeff();
  });
  c.grid_check("weyl.canonical_translation", "translations act on chi by a phase", 1e-12, "<=", [&] {
    ConeFunction s1 = scalar(g, c1);
    GroupElement t;
    t.a = Vec4(0.7, -1.2, 0.4, 2.0);
    auto w = canonical_rep_apply(1, 1, t, c1, g);
    return max_diff(w.values().cwiseAbs(), s1.values().cwiseAbs()) / s1.values().cwiseAbs().maxCoeff();
  });
  c.grid_check("weyl.canonical_unitarity", "<U chi1, U chi2> = <chi1, chi2> for both helicities, relative", 1e-6, "<=",
               [&] {
                 Rng rng = c.rng("weyl-unitarity");
                 ConeFunction s1 = scalar(g, c1), s2 = scalar(g, c2);
                 cplx ref = inner_product(InnerProductKind::l2, s1, s2);
                 double scale = norm(InnerProductKind::l2, s1) * norm(InnerProductKind::l2, s2);
                 double worst = 0;
                 for (int t = 0; t < 4; ++t) {
                   GroupElement e = random_group_element(rng, 0.5, 1.0);
                   for (int sign : {1, -1})
                     for (int n : {1, 2}) {
                       cplx got = inner_product(InnerProductKind::l2, canonical_rep_apply(sign, n, e, c1, g),
                                                canonical_rep_apply(sign, n, e, c2, g));
                       worst = std::max(worst, std::abs(got - ref) / scale);
                     }
                 }
                 return worst;
               });

  phi_checks(c, "weyl", 1);
  c.grid_check("weyl.phi_extraction", "Phi_+ maps H_p (chi, 0) to chi", 1e-12, "<=", [&] {
    auto chi = [](const Vec4& p) { return std::exp(-0.4 * p(0)) * cplx(std::cos(p(1)), p(3) / 4); };
    auto phi = ConeFunction::sample(g, 2, [&](const Vec4& p) -> VecXc {
      return massless_section(p) * Eigen::Vector2cd(chi(p), 0);
    });
    ConeFunction s = scalar(g, chi);
    return max_diff(iso_to_scalar(1, 1, phi).values(), s.values()) / s.values().cwiseAbs().maxCoeff();
  });
  c.grid_check("weyl.phi_intertwining", "Phi_+ V_1(g) = U_+(g) Phi_+ on analytic data", 1e-8, "<=", [&] {
    Rng rng = c.rng("weyl-phi-intertwining");
    auto f = random_packet(rng, 2, 1.0, 1.0);
    auto chi = [&](const Vec4& q) -> cplx {
      VecXc x = embed_at(Model::weyl(), *f, q)[0];
      return (sl2_inverse(massless_section(q)) * Eigen::Vector2cd(x(0), x(1)))(0);
    };
    double worst = 0;
    for (int t = 0; t < 3; ++t) {
      GroupElement e = random_group_element(rng, 1.0, 1.0);
      ConeFunction rhs = canonical_rep_apply(1, 1, e, chi, g);
      ConeFunction vb(g, 2);
      double scale = 0;
      for (std::size_t i = 0; i < g->size(); ++i) {
        try {
          vb.at(i) = v_apply_at(Model::weyl(), e, *f, g->nodes[i])[0];
        } catch (const OutOfChart&) {
          vb.at(i).setZero();
        }
        scale = std::max(scale, vb.at(i).norm());
      }
      worst = std::max(worst, max_diff(iso_to_scalar(1, 1, vb).values(), rhs.values()) / scale);
    }
    return worst;
  });
  c.grid_check("weyl.chain", "Phi_+ of the embedding equals Fourier, restriction and multiplication done directly",
               1e-11, "<=", [&] { return chain_check(c, "weyl-chain", 1); });

  causality_checks(c, "weyl", Model::weyl(), "<I_W f, I_W k>_W");
  c.grid_check("weyl.self_pairing", "the pairing of a bump with itself is its squared norm", 1e-12, "<=", [&] {
    CompactBump f(Vec4(0, 2, 0, 0), 0.5, pol2());
    auto r = causality_pairing(Model::weyl(), f, f, g);
    return std::abs(r.pairing - r.norm_f * r.norm_f) / r.pairing.real();
  });
  for (int n : {0, 1})
    c.check("pauli_jordan.n" + std::to_string(n),
            "the regulated odd/even combination with degree-" + std::to_string(n) +
                " weight extrapolates to 0 (|limit| / max(3 err, 1e-3 scale))",
            1, "<=", [n] { return pauli_jordan_ratio(n); });

  c.check("weyl.continuity_constant", "M = int d^3p (1+|p|^2)^{-4} equals pi^2/8", 1e-13, "<=",
          [] { return std::abs(continuity_constant() - M_PI * M_PI / 8) / (M_PI * M_PI / 8); });
  c.grid_check("weyl.continuity_violations", "|I_1 f|_+^2 <= M (sum_C |f^C|_{4,0})^2 on 50 random packets", 0, "<=",
               [&] {
                 Rng rng = c.rng("weyl-continuity");
                 int violations = 0;
                 for (int t = 0; t < 50; ++t)
                   if (!continuity_bound(*random_packet(rng, 2, 1.0, 1.0), g).holds()) ++violations;
                 return double(violations);
               });
}

void maxwell(Context& c) {
  c.check("maxwell.insert_displayed",
          "each tensor factor of the insert is 1/2 [[-(p1-ip2), p0+p3], [-(p0-p3), p1+ip2]]", 1e-13, "<=", [&] {
            Rng rng = c.rng("maxwell-insert");
            double worst = 0;
            for (int i = 0; i < 200; ++i) {
              Vec4 p = rng.chart_point(0.1, 10, 1e-3);
              MatXc D(2, 2);
              D << -cplx(p(1), -p(2)), p(0) + p(3), -(p(0) - p(3)), cplx(p(1), p(2));
              D /= 2.0;
              worst = std::max({worst, max_diff(embedding_insert(1, p), D) / p(0),
                                max_diff(embedding_insert(2, p), kron<double>(D, D)) / (p(0) * p(0))});
            }
            return worst;
          });
  c.grid_check("maxwell.residual.n2", "every embedded Maxwell block solves the F-equation (relative residual)", 1e-10,
               "<=", [&] { return residual_check(c, "maxwell-residual", 2); });
  c.grid_check("maxwell.residual.n4", "every embedded helicity-2 block solves its equation", 1e-10, "<=",
               [&] { return residual_check(c, "maxwell-residual-4", 4); });
  c.grid_check("maxwell.derivative_data.n2", "the F embedding annihilates derivative data", 1e-9, "<=",
               [&] { return derivative_check(c, "maxwell-derivative", 2); });
  c.grid_check("maxwell.intertwining", "I_F T(g) f = V(g) I_F f for 50 random g with rapidity <= 1", 1e-8, "<=",
               [&] { return intertwining_check(c, "maxwell-intertwining", Model::maxwell_F(), 50); });
  c.grid_check("maxwell.intertwining_e2", "intertwining for conjugates of little-group elements", 1e-8, "<=",
               [&] { return e2_conjugate_check(c, "maxwell-intertwining-e2", Model::maxwell_F()); });
  phi_checks(c, "maxwell", 2);
  c.grid_check("maxwell.chain", "Phi_+ of the F embedding equals Fourier, restriction and multiplication", 1e-11, "<=",
               [&] { return chain_check(c, "maxwell-chain", 2); });

  causality_checks(c, "maxwell", Model::maxwell_F(), "sigma_F(I_F f, I_F k)");
  {
    GridSpec s = c.spec();
    s.n_phi *= 2;
    c.check("maxwell.causality_spacelike_azimuthal",
            "sigma_F for the spacelike pair with only the azimuthal count doubled", 1e-5, "<=",
            [&] {
              CompactBump f(Vec4(0, 2, 0, 0), 0.5, pol4()), k(Vec4(0, -2, 0, 0), 0.5, pol4());
              return causality_pairing(Model::maxwell_F(), f, k, c.phi_doubled_grid()).relative();
            },
            s.str());
  }
  c.check("pauli_jordan.n2",
          "the regulated odd/even combination with degree-2 weight extrapolates to 0 (|limit| / max(3 err, 1e-3 scale))",
          1, "<=", [] { return pauli_jordan_ratio(2); });
}

void vector_potential(Context& c) {
  auto g = c.grid();
  auto c0 = [](const Vec4& p) { return std::exp(-0.5 * p(0)) * cplx(1, p(1)); };
  auto c1 = [](const Vec4& p) { return std::exp(-0.4 * p(0)) * cplx(p(2), 0.3); };
  auto c2 = [](const Vec4& p) { return std::exp(-0.6 * p(0)) * cplx(0.2, -p(3)); };
  auto zero = [](const Vec4&) { return cplx(0); };

  c.grid_check("vp.lift_residual", "D(H_p)(c0, c1, c2, 0) solves the A-equation", 1e-12, "<=", [&] {
    ConeFunction full = lift_vector_potential(g, c0, c1, c2);
    double worst = 0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      double n = full.at(i).norm();
      if (n == 0) continue;
      worst = std::max(worst, rwe_residual(EquationId::maxwell_A(), VecXc(full.at(i)), g->nodes[i]).norm() /
                                  (g->nodes[i](0) * n));
    }
    return worst;
  });
  c.grid_check("vp.degenerate", "D(H_p)(chi,0,0,0) has zero eta self-pairing", 1e-12, "<=", [&] {
    ConeFunction pure = lift_vector_potential(g, c0, zero, zero);
    double n = norm(InnerProductKind::l2, pure);
    return std::abs(vector_potential_pairings(pure, pure).eta_pair) / (n * n);
  });
  c.grid_check("vp.physical_norm", "D(H_p)(0,chi1,chi2,0) has eta self-pairing int |chi1|^2 + |chi2|^2", 1e-12, "<=",
               [&] {
                 ConeFunction phys = lift_vector_potential(g, zero, c1, c2);
                 std::vector<double> terms(g->size());
                 for (std::size_t i = 0; i < g->size(); ++i)
                   terms[i] = g->weights[i] * (std::norm(c1(g->nodes[i])) + std::norm(c2(g->nodes[i])));
                 double expect = pairwise_sum(terms);
                 return std::abs(vector_potential_pairings(phys, phys).eta_pair - expect) / expect;
               });
  c.grid_check("vp.pairing_identity", "the eta pairing equals the l2 pairing of the physical factors", 1e-12, "<=", [&] {
    auto r = vector_potential_pairings(lift_vector_potential(g, c0, c1, c2), lift_vector_potential(g, c2, c0, c1));
    return r.defect() / std::abs(r.factor_pair);
  });
  c.grid_check("vp.off_space_guard", "data off the A-equation solution space is rejected", 0, "<=", [&] {
    auto off = ConeFunction::sample(g, 4, [](const Vec4& p) { return (VecXc(4) << 0, 0, 0, std::exp(-p(0))).finished(); });
    return throws<InvalidArgument>([&] { vector_potential_pairings(off, off); });
  });
  c.grid_check("vp.phi_af_isometry", "|Phi_AF(phi+ + phi-)|_A = |phi+ + phi-|_F", 1e-10, "<=", [&] {
    Rng rng = c.rng("vp-phiaf");
    double worst = 0;
    for (int t = 0; t < 3; ++t) {
      EmbeddedVector F = embed(Model::maxwell_F(), *random_packet(rng, 4, 1.0, 1.0), g);
      auto pr = vector_potential_pairings(phi_af(F), phi_af(F));
      double nF = model_norm(F);
      worst = std::max(worst, std::abs(std::sqrt(pr.eta_pair.real()) - nF) / nF);
    }
    return worst;
  });
  c.grid_check("vp.phi_af_slots", "Phi_AF puts the h+ scalar into the first physical slot", 1e-12, "<=", [&] {
    Rng rng = c.rng("vp-slots");
    EmbeddedVector F = embed(Model::maxwell_F(), *random_packet(rng, 4, 1.0, 1.0), g);
    auto pr = vector_potential_pairings(phi_af(F), phi_af(F));
    ConeFunction chip = iso_to_scalar(1, 2, F.blocks[0]);
    return max_diff(pr.chi_phi.block(0, 1).values(), chip.values()) / chip.values().cwiseAbs().maxCoeff();
  });
}

void fock(Context& c) {
  auto g = c.grid();

  c.check("fock.dimensions", "Fock dimensions are the binomial sums", 0, "<=", [] {
    double d = 0;
    d += std::abs(double(FockSpace(Statistics::fermi, 6, 6).dim()) - 64);
    d += std::abs(double(FockSpace(Statistics::fermi, 8, 4).dim()) - (1 + 8 + 28 + 56 + 70));
    d += std::abs(double(FockSpace(Statistics::bose, 8, 5).dim()) - 1287);
    return d;
  });
  c.check("fock.exclusion", "c*(e_1) c*(e_1) = 0", 0, "<=", [] {
    FockSpace f(Statistics::fermi, 4, 4);
    FockOperator c1 = ladder(f, 0, Ladder::create);
    FockOperator sq = c1 * c1;
    double m = 0;
    for (int k = 0; k < sq.outerSize(); ++k)
      for (FockOperator::InnerIterator it(sq, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  });
  c.check("fock.ladder_car", "{c_i, c*_j} = delta_ij", 1e-13, "<=",
          [] { return ladder_relation_defect(FockSpace(Statistics::fermi, 6, 6)); });
  c.check("fock.ladder_ccr", "[a_i, a*_j] = delta_ij below the truncation", 1e-13, "<=",
          [] { return ladder_relation_defect(FockSpace(Statistics::bose, 4, 5)); });

  // Weyl field on six packets
  Rng rng = c.rng("fock-weyl");
  std::vector<std::shared_ptr<GaussianPacket>> fw;
  for (int i = 0; i < 6; ++i) fw.push_back(random_packet(rng, 2, 1.0, 1.0));
  OneParticleBasis bw;
  std::vector<VecXc> aw;
  std::vector<EmbeddedVector> ew;
  c.grid_check("fock.gram_weyl", "Gram matrix rebuilt from the orthonormal basis (6 Weyl vectors)", 1e-10, "<=", [&] {
    std::vector<EmbeddedVector> v;
    for (const auto& f : fw) {
      v.push_back(one_particle_vector(Model::weyl(), *f, g));
      ew.push_back(embed(Model::weyl(), *f, g));
    }
    bw = orthonormalize(v);
    for (const auto& x : v) aw.push_back(bw.coordinates(x));
    return bw.gram_defect();
  });
  auto ready_w = [&] {
    if (aw.size() != fw.size()) throw Error("Weyl basis unavailable");
  };
  FockSpace fs(Statistics::fermi, 6, 6);
  c.grid_check("fock.car", "{phi(f), phi(k)} = Re<P I f, P I k> 1 (relative to |u_f||u_k|)", 1e-12, "<=", [&] {
    ready_w();
    double worst = 0;
    for (std::size_t i = 0; i < fw.size(); ++i)
      for (std::size_t j = 0; j < fw.size(); ++j)
        worst = std::max(worst, car_defect(fs, aw[i], aw[j]) / (aw[i].norm() * aw[j].norm()));
    return worst;
  });
  c.grid_check("fock.car_weyl_form", "Re<P I f, P I k> = 1/2 <I f, I k>_W", 1e-10, "<=", [&] {
    ready_w();
    double worst = 0;
    for (std::size_t i = 0; i < fw.size(); ++i)
      for (std::size_t j = 0; j < fw.size(); ++j) {
        cplx w = model_inner_product(ew[i], ew[j]);
        worst = std::max(worst, std::abs(aw[i].dot(aw[j]).real() - 0.5 * w.real()) / (aw[i].norm() * aw[j].norm()));
      }
    return worst;
  });
  c.grid_check("fock.norm_bound", "|phi_W(f)| <= |I_W f| (largest ratio over the packets)", 1, "<=", [&] {
    ready_w();
    double worst = 0;
    for (std::size_t i = 0; i < fw.size(); ++i)
      worst = std::max(worst, operator_norm(field_operator(Model::weyl(), *fw[i], bw, fs, g)) / model_norm(ew[i]));
    return worst;
  });
  c.grid_check("fock.hermitian", "phi(f) is self-adjoint and has zero vacuum expectation", 1e-13, "<=", [&] {
    ready_w();
    double worst = 0;
    for (std::size_t i = 0; i < fw.size(); ++i) {
      FockOperator phi = field_operator(Model::weyl(), *fw[i], bw, fs, g);
      worst = std::max({worst, hermiticity_defect(phi) / aw[i].norm(), std::abs(phi.coeff(0, 0))});
    }
    return worst;
  });
  c.grid_check("fock.two_point_weyl", "<Omega, phi(f) phi(k) Omega> = 1/2 <u_f, u_k> (Weyl)", 1e-11, "<=", [&] {
    ready_w();
    double worst = 0;
    for (std::size_t i = 0; i < fw.size(); ++i)
      for (std::size_t j = 0; j < fw.size(); ++j)
        worst = std::max(worst, two_point(fs, aw[i], aw[j]).defect() / (aw[i].norm() * aw[j].norm()));
    return worst;
  });
  c.grid_check("fock.derivative_field", "phi_W of derivative data is the zero operator", 1e-9, "<=", [&] {
    ready_w();
    FockOperator pd = field_operator(Model::weyl(), DerivativeData(fw[1]), bw, fs, g);
    double m = 0;
    for (int k = 0; k < pd.outerSize(); ++k)
      for (FockOperator::InnerIterator it(pd, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m / aw[1].norm();
  });
  c.grid_check("fock.spectral_positivity", "the energy form on the one-particle basis has no negative eigenvalue", -1e-12,
               ">=", [&] {
                 ready_w();
                 return spectral_positivity(bw);
               });
  c.grid_check("fock.basis_projection", "P + Gamma_W P Gamma_W = 1", 1e-10, "<=", [&] {
    ready_w();
    const EmbeddedVector& v = ew[0];
    EmbeddedVector a = basis_projection(v), b = gamma_w(basis_projection(gamma_w(v)));
    double worst = 0;
    for (int k = 0; k < 4; ++k)
      worst = std::max(worst, max_diff(MatXc(a.blocks[k].values() + b.blocks[k].values()), v.blocks[k].values()));
    return worst / max_block_abs(v);
  });
  c.grid_check("fock.spacelike_anticommutator", "<Omega, {phi(f), phi(k)} Omega> vanishes for spacelike bumps", 1e-5,
               "<=", [&] {
                 CompactBump f(Vec4(0, 2, 0, 0), 0.5, pol2()), k(Vec4(0, -2, 0, 0), 0.5, pol2());
                 auto uf = one_particle_vector(Model::weyl(), f, g), uk = one_particle_vector(Model::weyl(), k, g);
                 OneParticleBasis b = orthonormalize({uf, uk});
                 VecXc af = b.coordinates(uf), ak = b.coordinates(uk);
                 FockSpace s(Statistics::fermi, b.dim(), b.dim());
                 TwoPoint fk = two_point(s, af, ak), kf = two_point(s, ak, af);
                 return std::abs(fk.matrix + kf.matrix) / (af.norm() * ak.norm());
               });

  // Maxwell field on eight packets
  Rng mrng = c.rng("fock-maxwell");
  std::vector<std::shared_ptr<GaussianPacket>> fm;
  for (int i = 0; i < 8; ++i) fm.push_back(random_packet(mrng, 4, 1.0, 1.0));
  OneParticleBasis bm;
  std::vector<VecXc> am;
  std::vector<EmbeddedVector> em;
  c.grid_check("fock.gram_maxwell", "Gram matrix rebuilt from the orthonormal basis (8 Maxwell vectors)", 1e-10, "<=",
               [&] {
                 for (const auto& f : fm) em.push_back(one_particle_vector(Model::maxwell_F(), *f, g));
                 bm = orthonormalize(em);
                 for (const auto& x : em) am.push_back(bm.coordinates(x));
                 return bm.gram_defect();
               });
  auto ready_m = [&] {
    if (am.size() != fm.size() || bm.dim() != 8) throw Error("Maxwell basis unavailable");
  };
  FockSpace bs(Statistics::bose, 8, 5);
  c.grid_check("fock.ccr", "[phi(f), phi(k)] = i Im<I f, I k> 1 on at most N-1 particles", 1e-12, "<=", [&] {
    ready_m();
    double worst = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) worst = std::max(worst, ccr_defect(bs, am[i], am[j]) / (am[i].norm() * am[j].norm()));
    return worst;
  });
  c.grid_check("fock.ccr_sigma", "Im<u_f, u_k> is the causality form sigma_F", 1e-10, "<=", [&] {
    ready_m();
    double worst = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cplx ip = model_inner_product(em[i], em[j]);
        worst = std::max(worst, std::abs(am[i].dot(am[j]).imag() - ip.imag()) / (am[i].norm() * am[j].norm()));
      }
    return worst;
  });
  c.grid_check("fock.two_point_maxwell", "<Omega, phi(f) phi(k) Omega> = 1/2 <u_f, u_k> (Maxwell)", 1e-11, "<=", [&] {
    ready_m();
    double worst = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, two_point(bs, am[i], am[j]).defect() / (am[i].norm() * am[j].norm()));
    return worst;
  });

  for (Model m : {Model::weyl(), Model::maxwell_F()}) {
    const std::string tag = m.name();
    Rng crng = c.rng(m.fermionic() ? "fock-covariance-weyl" : "fock-covariance-maxwell");
    auto f1 = random_packet(crng, m.fibre_dim(), 1.0, 1.0);
    std::shared_ptr<const TestFunction> f2 = random_packet(crng, m.fibre_dim(), 1.0, 1.0);
    double scale = std::numeric_limits<double>::quiet_NaN();
    c.grid_check("fock.covariance_identity." + tag, "<I f1, V(1) I f2> = <I f1, I f2> exactly up to roundoff", 1e-14,
                 "<=", [&] {
                   scale = model_norm(embed(m, *f1, g)) * model_norm(embed(m, *f2, g));
                   return covariance_matrix_elements(m, GroupElement{}, *f1, f2, g).defect() / scale;
                 });
    c.grid_check("fock.covariance_translation." + tag, "matrix elements of Q(g) agree for a random translation", 1e-8,
                 "<=", [&] {
                   GroupElement t;
                   t.a = crng.vec4(2.0);
                   return covariance_matrix_elements(m, t, *f1, f2, g).defect() / scale;
                 });
    c.grid_check("fock.covariance_boost." + tag, "matrix elements of Q(g) agree for random boosts", 1e-7, "<=", [&] {
      double worst = 0;
      for (int k = 0; k < 3; ++k)
        worst = std::max(worst,
                         covariance_matrix_elements(m, random_group_element(crng, 1.0, 1.0), *f1, f2, g).defect() /
                             scale);
      return worst;
    });
  }
}

} // namespace mnl::suites
