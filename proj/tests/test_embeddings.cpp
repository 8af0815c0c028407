#include "doctest.h"

#include <sstream>

#include "mnl/embeddings.hpp"
#include "mnl/random.hpp"
#include "oracles.hpp"

using namespace mnl;
using oracle::max_diff;

namespace {

GridSpec small_spec() {
  GridSpec s;
  s.n_r = 24;
  s.n_theta = 16;
  s.n_phi = 32;
  return s;
}

GridPtr small_grid() {
  static GridPtr g = build_grid(small_spec());
  return g;
}

GridPtr default_grid() {
  static GridPtr g = build_grid(GridSpec{});
  return g;
}

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

// random data on every block, not necessarily in the solution space
EmbeddedVector random_blocks(Rng& rng, Model m, GridPtr g) {
  EmbeddedVector v{m, {}};
  for (int b = 0; b < m.blocks(); ++b) {
    v.blocks.push_back(ConeFunction::sample(g, m.fibre_dim(), [&](const Vec4& p) {
      VecXc x(m.fibre_dim());
      for (int i = 0; i < x.size(); ++i) x(i) = rng.complex_normal() * std::exp(-0.3 * p(0));
      return x;
    }));
  }
  return v;
}

// Gaussian Fourier transform written out independently of the library class
VecXc gaussian_ft(const GaussianPacket& g, const Vec4& p) {
  Vec4 d = p - g.momentum();
  double w = g.width();
  double pair = d(0) * g.center()(0) - d.tail<3>().dot(g.center().tail<3>());
  return g.polarization() * (4 * M_PI * M_PI * std::pow(w, 4) * std::exp(-w * w * d.squaredNorm() / 2)) *
         std::polar(1.0, -pair);
}

} // namespace

TEST_CASE("model metadata") {
  CHECK(Model::weyl().blocks() == 4);
  CHECK(Model::maxwell_F().blocks() == 2);
  CHECK(Model::helicity(3).blocks() == 4);
  CHECK(Model::helicity(4).blocks() == 2);
  CHECK(Model::helicity(1) == Model::weyl());
  CHECK(Model::parse("helicity(3)") == Model::helicity(3));
  CHECK(Model::parse(Model::maxwell_F().name()) == Model::maxwell_F());
  CHECK_THROWS_AS(Model::parse("scalar"), InvalidArgument);
  CHECK_THROWS_AS(Model::helicity(0), InvalidArgument);
}

TEST_CASE("embedding insert matches the displayed matrix") {
  Rng rng(101, "insert");
  for (int i = 0; i < 200; ++i) {
    Vec4 p = rng.chart_point(0.05, 15, 1e-3);
    MatXc D(2, 2);
    D << -cplx(p(1), -p(2)), p(0) + p(3), -(p(0) - p(3)), cplx(p(1), p(2));
    D /= 2.0;
    CHECK(max_diff(embedding_insert(1, p), D) <= 1e-13 * p(0));
    // the F insert is the same pattern in each tensor factor
    CHECK(max_diff(embedding_insert(2, p), kron<double>(D, D)) <= 1e-13 * p(0) * p(0));
  }
}

TEST_CASE("embedded blocks solve their wave equations") {
  Rng rng(103, "residual");
  auto g = small_grid();
  for (int n : {1, 2, 3, 4}) {
    Model m = Model::helicity(n);
    for (int t = 0; t < 3; ++t) {
      auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
      EmbeddedVector v = embed(m, *f, g);
      CHECK(v.blocks.size() == static_cast<std::size_t>(m.blocks()));
      CHECK(embedded_residual(v) <= 1e-10);
      // relative to |f^(p)| as well, at a sample of nodes
      for (std::size_t i = 0; i < g->size(); i += 97) {
        const Vec4& p = g->nodes[i];
        // P-dagger and the insert contribute p0^(n+1) to the operator norm
        double scale = std::pow(p(0), n + 1) * std::max(f->fourier(p).norm(), f->fourier(Vec4(-p)).norm());
        if (scale == 0) continue;
        for (int b = 0; b < m.blocks(); ++b) {
          VecXc phi = v.blocks[b].at(i);
          if (Model::minus_block(b)) phi = phi.conjugate();
          CHECK(rwe_residual(m.equation(), phi, p).norm() <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("derivative data embeds to zero") {
  Rng rng(107, "derivative");
  auto g = small_grid();
  for (int n : {1, 2, 3}) {
    Model m = Model::helicity(n);
    auto h = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
    DerivativeData f(h);
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < g->size(); i += 7) {
      const Vec4& p = g->nodes[i];
      auto vals = embed_at(m, f, p);
      for (const auto& v : vals) worst = std::max(worst, v.norm());
      scale = std::max(scale, p(0) * std::max(f.fourier(p).norm(), f.fourier(Vec4(-p)).norm()));
    }
    CHECK(scale > 0);
    CHECK(worst <= 1e-9 * scale);
  }
}

TEST_CASE("Gamma structure") {
  Rng rng(109, "gamma");
  auto g = small_grid();
  Model m = Model::weyl();
  EmbeddedVector u = random_blocks(rng, m, g), v = random_blocks(rng, m, g);
  // Gamma_1 collapses to componentwise conjugation
  const double u0 = u.blocks[0].values().cwiseAbs().maxCoeff();
  CHECK(max_diff(gamma1(u.blocks[0], 1, 1).values(), u.blocks[0].values().conjugate()) <= 1e-12 * u0);
  CHECK(max_diff(gamma1(u.blocks[0], 1, -1).values(), u.blocks[0].values().conjugate()) <= 1e-12 * u0);
  CHECK(max_diff(gamma0(u.blocks[1]).values(), u.blocks[1].values().conjugate()) == 0.0);
  // involution
  CHECK(max_block_diff(gamma_w(gamma_w(u)), u) <= 1e-12 * max_block_abs(u));
  // anti-unitary: <Gamma u, Gamma v> = <v, u>
  cplx lhs = model_inner_product(gamma_w(u), gamma_w(v));
  cplx rhs = model_inner_product(v, u);
  CHECK(std::abs(lhs - rhs) <= 1e-10 * model_norm(u) * model_norm(v));
  // the embedding is Gamma-invariant
  for (int t = 0; t < 3; ++t) {
    auto f = random_packet(rng, 2, 1.0, 1.0);
    EmbeddedVector w = embed(m, *f, g);
    CHECK(max_block_diff(gamma_w(w), w) <= 1e-10 * max_block_abs(w));
  }
  // projections
  EmbeddedVector P = basis_projection(u), Q = basis_projection(u, true);
  CHECK(P.blocks[2].values().norm() == 0.0);
  CHECK(Q.blocks[0].values().norm() == 0.0);
  CHECK(max_diff(P.blocks[1].values(), u.blocks[1].values()) == 0.0);
  CHECK_THROWS_AS(gamma_w(embed(Model::maxwell_F(), *random_packet(rng, 4), g)), InvalidArgument);
}

TEST_CASE("canonical representations") {
  auto g = default_grid();
  auto chi1 = [](const Vec4& p) { return std::exp(-p(0) * p(0) / 4) * cplx(1, p(1) / 3); };
  auto chi2 = [](const Vec4& p) { return std::exp(-p(0) * p(0) / 5) * cplx(p(2), 0.5); };
  auto s1 = ConeFunction::sample(g, 1, [&](const Vec4& p) { return (VecXc(1) << chi1(p)).finished(); });
  auto s2 = ConeFunction::sample(g, 1, [&](const Vec4& p) { return (VecXc(1) << chi2(p)).finished(); });
  // Lambda_A^{-1} p is recomputed, so the identity is exact only up to rounding
  const double tol = 1e-12 * s1.values().cwiseAbs().maxCoeff();

  SUBCASE("identity") {
    for (int sign : {1, -1}) {
      auto u = canonical_rep_apply(sign, 1, GroupElement{}, chi1, g);
      CHECK(max_diff(u.values(), s1.values()) <= tol);
      CHECK(max_diff(canonical_rep_apply(sign, 2, GroupElement{}, s1).values(), s1.values()) == 0.0);
    }
  }
  SUBCASE("translation is a pure phase") {
    GroupElement t;
    t.a = Vec4(0.7, -1.2, 0.4, 2.0);
    auto u = canonical_rep_apply(1, 1, t, chi1, g);
    CHECK(max_diff(u.values().cwiseAbs(), s1.values().cwiseAbs()) <= tol);
    CHECK(max_diff(canonical_rep_apply(1, 1, t, s1).values(), u.values()) <= tol);
  }
  SUBCASE("unitarity on analytic data") {
    Rng rng(113, "unitarity");
    cplx ref = inner_product(InnerProductKind::l2, s1, s2);
    for (int t = 0; t < 4; ++t) {
      GroupElement e = random_group_element(rng, 0.5, 1.0);
      for (int sign : {1, -1}) {
        for (int n : {1, 2}) {
          RepApplyStats st;
          auto u1 = canonical_rep_apply(sign, n, e, chi1, g, &st);
          auto u2 = canonical_rep_apply(sign, n, e, chi2, g);
          CHECK(st.skipped == 0);
          cplx got = inner_product(InnerProductKind::l2, u1, u2);
          CHECK(std::abs(got - ref) <= 1e-6 * norm(InnerProductKind::l2, s1) * norm(InnerProductKind::l2, s2));
        }
      }
    }
  }
  SUBCASE("sampled data admits only Lambda = 1") {
    GroupElement minus;
    minus.A = -Spin2d::Identity();
    auto u = canonical_rep_apply(1, 1, minus, s1);
    CHECK(max_diff(u.values(), MatXc(-s1.values())) == 0.0);
    CHECK(max_diff(canonical_rep_apply(1, 2, minus, s1).values(), s1.values()) == 0.0);
    Rng rng(127, "boost");
    CHECK_THROWS_AS(canonical_rep_apply(1, 1, random_group_element(rng, 0.5, 0), s1), InvalidArgument);
  }
}

TEST_CASE("scalar isometries Phi+ and Phi-") {
  auto g = small_grid();
  auto chi = ConeFunction::sample(g, 1, [](const Vec4& p) {
    return (VecXc(1) << std::exp(-0.4 * p(0)) * cplx(std::cos(p(1)), p(3) / 4)).finished();
  });
  for (int n : {1, 2, 3}) {
    for (int sign : {1, -1}) {
      ConeFunction phi = scalar_to_solution(sign, n, chi);
      ConeFunction back = iso_to_scalar(sign, n, phi);
      CHECK(max_diff(back.values(), chi.values()) <= 1e-12 * chi.values().cwiseAbs().maxCoeff());
      auto kind = sign > 0 ? InnerProductKind::beta_plus : InnerProductKind::beta_minus;
      double a = inner_product(kind, phi, phi).real(), b = inner_product(InnerProductKind::l2, chi, chi).real();
      CHECK(std::abs(a - b) <= 1e-10 * b);
    }
  }
  // phi = H_p (chi, 0) gives chi
  auto phi = ConeFunction::sample(g, 2, [&](const Vec4& p) -> VecXc {
    Spin2d H = massless_section(p);
    cplx c = std::exp(-0.4 * p(0)) * cplx(std::cos(p(1)), p(3) / 4);
    return H * Eigen::Vector2cd(c, 0);
  });
  CHECK(max_diff(iso_to_scalar(1, 1, phi).values(), chi.values()) <= 1e-12);
  // data off the solution space is rejected
  auto off = ConeFunction::sample(g, 2, [](const Vec4& p) { return (VecXc(2) << 1.0, std::exp(-p(0))).finished(); });
  CHECK_THROWS_AS(iso_to_scalar(1, 1, off), InvalidArgument);
}

TEST_CASE("Phi+ intertwines V_1 with U_+") {
  Rng rng(131, "phi-intertwine");
  auto g = small_grid();
  auto f = random_packet(rng, 2, 1.0, 1.0);
  // chi(q) = Phi+ of the first block at q, as an analytic function
  auto chi = [&](const Vec4& q) -> cplx {
    VecXc v = embed_at(Model::weyl(), *f, q)[0];
    return (sl2_inverse(massless_section(q)) * Eigen::Vector2cd(v(0), v(1)))(0);
  };
  for (int t = 0; t < 5; ++t) {
    GroupElement e = random_group_element(rng, 1.0, 1.0);
    RepApplyStats st;
    ConeFunction rhs = canonical_rep_apply(1, 1, e, chi, g, &st);
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
    ConeFunction lhs = iso_to_scalar(1, 1, vb);
    CHECK(max_diff(lhs.values(), rhs.values()) <= 1e-8 * scale);
  }
}

TEST_CASE("intertwining identity for the embeddings") {
  Rng rng(137, "intertwining");
  auto g = small_grid();
  for (Model m : {Model::weyl(), Model::maxwell_F(), Model::helicity(3)}) {
    auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
    auto id = intertwining_defect(m, GroupElement{}, *f, *g);
    CHECK(id.defect <= 1e-12);
    CHECK(id.skipped == 0);
    CHECK(id.nodes == g->size());
    for (int t = 0; t < 5; ++t) {
      auto r = intertwining_defect(m, random_group_element(rng, 1.0, 1.0), *f, *g);
      CHECK(r.defect <= 1e-8);
      CHECK(r.scale > 0);
    }
    // conjugates of little-group elements
    for (int t = 0; t < 3; ++t) {
      Spin2d B = rng.sl2c(0.5);
      GroupElement e{B * rng.e2() * sl2_inverse(B), rng.vec4(1.0)};
      CHECK(intertwining_defect(m, e, *f, *g).defect <= 1e-8);
    }
  }
  // block-by-block against a direct evaluation at one node
  auto f = random_packet(rng, 2, 0.5, 0.5);
  GroupElement e = random_group_element(rng, 0.8, 1.0);
  Vec4 p = rng.chart_point(0.5, 4, 0.1);
  Vec4 q = inverse_lorentz_action(e.A, p);
  auto at_q = embed_at(Model::weyl(), *f, q);
  auto v = v_apply_at(Model::weyl(), e, *f, p);
  double pa = p(0) * e.a(0) - p.tail<3>().dot(e.a.tail<3>());
  Spin2d Ab = e.A.conjugate();
  CHECK(max_diff(v[0], VecXc(std::polar(1.0, -pa) * e.A * at_q[0])) <= 1e-13 * at_q[0].norm() * 10);
  CHECK(max_diff(v[1], VecXc(std::polar(1.0, -pa) * Ab * at_q[1])) <= 1e-13 * at_q[1].norm() * 10);
  CHECK(max_diff(v[2], VecXc(std::polar(1.0, pa) * e.A * at_q[2])) <= 1e-13 * at_q[2].norm() * 10);
  CHECK(max_diff(v[3], VecXc(std::polar(1.0, pa) * Ab * at_q[3])) <= 1e-13 * at_q[3].norm() * 10);
}

TEST_CASE("causality pairings") {
  VecXc v2(2), v4(4);
  v2 << 1, cplx(0.3, -0.5);
  v4 << 1, cplx(0.3, -0.5), cplx(0.3, -0.5), 0.2;
  CompactBump f2(Vec4(0, 2, 0, 0), 0.5, v2), k2(Vec4(0, -2, 0, 0), 0.5, v2);
  CompactBump f4(Vec4(0, 2, 0, 0), 0.5, v4), k4(Vec4(0, -2, 0, 0), 0.5, v4);
  REQUIRE(spacelike_separated(f2, k2));

  SUBCASE("Weyl, spacelike pair, default grid and its doubling") {
    auto a = causality_pairing(Model::weyl(), f2, k2, default_grid());
    CHECK(a.relative() <= 1e-5);
    CHECK(std::abs(a.pairing.imag()) <= 1e-12 * a.norm_f * a.norm_k);
    auto b = causality_pairing(Model::weyl(), f2, k2, build_grid(GridSpec{}.doubled()));
    CHECK(b.relative() <= a.relative() / 4);
  }
  SUBCASE("Maxwell F, spacelike pair, azimuthal refinement") {
    auto a = causality_pairing(Model::maxwell_F(), f4, k4, default_grid());
    GridSpec s;
    s.n_phi *= 2;
    auto b = causality_pairing(Model::maxwell_F(), f4, k4, build_grid(s));
    CHECK(b.relative() <= 1e-5);
    CHECK(b.relative() <= a.relative() / 4);
  }
  SUBCASE("self pairing is the norm") {
    auto a = causality_pairing(Model::weyl(), f2, f2, small_grid());
    CHECK(a.pairing.real() > 0);
    CHECK(std::abs(a.pairing.real() - a.norm_f * a.norm_f) <= 1e-12 * a.pairing.real());
  }
  SUBCASE("null-separated control is far from zero") {
    CompactBump a2(Vec4(0, 0, 0, 0), 0.5, v2), b2(Vec4(2, 2, 0, 0), 0.5, v2);
    CompactBump a4(Vec4(0, 0, 0, 0), 0.5, v4), b4(Vec4(2, 2, 0, 0), 0.5, v4);
    CHECK_FALSE(spacelike_separated(a2, b2));
    CHECK(causality_pairing(Model::weyl(), a2, b2, default_grid()).relative() > 1e-4);
    CHECK(causality_pairing(Model::maxwell_F(), a4, b4, default_grid()).relative() > 1e-4);
  }
}

TEST_CASE("Pauli-Jordan oracle") {
  SUBCASE("n = 0 closed form of the single exponential") {
    // int_{-1}^{1} (eps + i a c)^{-2} dc = 2 / (eps^2 + a^2)
    auto r = pauli_jordan_regulated(Vec4(0, 1, 0, 0), 0);
    CHECK(r.scale == doctest::Approx(2 * M_PI / (0.16 + 1)).epsilon(1e-10));
    CHECK(r.extrapolant.norm() <= 1e-3 * r.scale);
  }
  SUBCASE("odd and even degrees vanish in the limit") {
    for (int n : {1, 2}) {
      for (Vec4 x : {Vec4(0, 2, 0, 0), Vec4(0, 1.3, 0.4, -0.2), Vec4(0, 0, 0, 0.7)}) {
        auto r = pauli_jordan_regulated(x, n);
        CHECK(r.values.size() == 4);
        CHECK(r.extrapolants.size() == 3);
        CHECK(r.extrapolant.norm() <= std::max(3 * r.error, 1e-3 * r.scale));
        // the regulated values themselves go to zero linearly
        CHECK(r.values[3].norm() <= 0.6 * r.values[2].norm());
      }
    }
  }
  SUBCASE("beta") {
    Vec4 p(1, 0.6, 0, 0.8);
    CHECK(max_diff(pauli_jordan_beta(0, p), MatXc::Ones(1, 1)) == 0.0);
    MatXc b1(2, 2);
    b1 << p(0) - p(3), -cplx(p(1), p(2)), -cplx(p(1), -p(2)), p(0) + p(3);
    b1 /= 2.0;
    CHECK(max_diff(pauli_jordan_beta(1, p), b1) <= 1e-15);
    CHECK(max_diff(pauli_jordan_beta(2, p), kron<double>(b1, b1)) <= 1e-15);
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(pauli_jordan_regulated(Vec4::Zero(), 0), InvalidArgument);
    CHECK_THROWS_AS(pauli_jordan_regulated(Vec4(0.5, 1, 0, 0), 0), InvalidArgument);
  }
}

TEST_CASE("vector potential pairings") {
  auto g = small_grid();
  auto c0 = [](const Vec4& p) { return std::exp(-0.5 * p(0)) * cplx(1, p(1)); };
  auto c1 = [](const Vec4& p) { return std::exp(-0.4 * p(0)) * cplx(p(2), 0.3); };
  auto c2 = [](const Vec4& p) { return std::exp(-0.6 * p(0)) * cplx(0.2, -p(3)); };
  auto zero = [](const Vec4&) { return cplx(0); };

  // the lifts solve the A-equation
  ConeFunction full = lift_vector_potential(g, c0, c1, c2);
  for (std::size_t i = 0; i < g->size(); i += 31)
    CHECK(rwe_residual(EquationId::maxwell_A(), VecXc(full.at(i)), g->nodes[i]).norm() <=
          1e-12 * g->nodes[i](0) * full.at(i).norm());

  ConeFunction pure = lift_vector_potential(g, c0, zero, zero);
  auto zp = vector_potential_pairings(pure, pure);
  CHECK(std::abs(zp.eta_pair) <= 1e-12 * norm(InnerProductKind::l2, pure) * norm(InnerProductKind::l2, pure));

  ConeFunction phys = lift_vector_potential(g, zero, c1, c2);
  auto pp = vector_potential_pairings(phys, phys);
  double expect = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Vec4& p = g->nodes[i];
    expect += g->weights[i] * (std::norm(c1(p)) + std::norm(c2(p)));
  }
  CHECK(std::abs(pp.eta_pair - expect) <= 1e-12 * expect);

  // the zero vectors drop out of every pairing
  ConeFunction other = lift_vector_potential(g, c2, c0, c1);
  auto xp = vector_potential_pairings(full, other);
  CHECK(xp.defect() <= 1e-12 * std::abs(xp.factor_pair));

  auto off = ConeFunction::sample(g, 4, [](const Vec4& p) { return (VecXc(4) << 0, 0, 0, std::exp(-p(0))).finished(); });
  CHECK_THROWS_AS(vector_potential_pairings(off, off), InvalidArgument);
}

TEST_CASE("Phi_AF is an isometry onto the physical classes") {
  Rng rng(139, "phiaf");
  auto g = small_grid();
  for (int t = 0; t < 3; ++t) {
    auto f = random_packet(rng, 4, 1.0, 1.0);
    EmbeddedVector F = embed(Model::maxwell_F(), *f, g);
    ConeFunction A = phi_af(F);
    auto pr = vector_potential_pairings(A, A);
    double nF = model_norm(F);
    CHECK(std::abs(std::sqrt(pr.eta_pair.real()) - nF) <= 1e-10 * nF);
    // helicity slots: index 1 is the h+ scalar, index 2 the h- scalar
    ConeFunction chip = iso_to_scalar(1, 2, F.blocks[0]);
    CHECK(max_diff(pr.chi_phi.block(0, 1).values(), chip.values()) <= 1e-12 * chip.values().cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(phi_af(embed(Model::weyl(), *random_packet(rng, 2), g)), InvalidArgument);
}

TEST_CASE("continuity bound") {
  // oracle: 4 pi int_0^inf r^2 (1+r^2)^{-4} dr with r = u / (1 - u)
  std::vector<double> x, w;
  oracle::gauss_legendre(200, 0, 1, x, w);
  double M = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double u = x[i], r = u / (1 - u), dr = 1 / ((1 - u) * (1 - u));
    M += w[i] * 4 * M_PI * r * r * std::pow(1 + r * r, -4) * dr;
  }
  CHECK(continuity_constant() == doctest::Approx(M).epsilon(1e-12));
  CHECK(continuity_constant() == doctest::Approx(M_PI * M_PI / 8).epsilon(1e-13));

  Rng rng(149, "continuity");
  auto g = default_grid();
  int violations = 0;
  for (int t = 0; t < 50; ++t) {
    auto f = random_packet(rng, 2, 1.0, 1.0);
    auto r = continuity_bound(*f, g);
    CHECK(r.lhs > 0);
    if (!r.holds()) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("Fourier, restrict, multiply chain") {
  Rng rng(151, "chain");
  auto g = small_grid();
  for (int n : {1, 2}) {
    Model m = Model::helicity(n);
    auto f = random_packet(rng, m.fibre_dim(), 1.0, 1.0);
    EmbeddedVector v = embed(m, *f, g);
    ConeFunction chi = iso_to_scalar(1, n, v.blocks[0]);
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      const Vec4& p = g->nodes[i];
      VecXc fh = gaussian_ft(*f, p);
      Spin2d Hb = massless_section_formula(p).conjugate();
      Eigen::Matrix2cd Hbi = Eigen::Matrix2cd(Hb).inverse();
      MatXc row = Hbi.row(1);
      MatXc mult = n == 1 ? row : kron<double>(row, row);
      cplx expect = (mult * fh)(0);
      worst = std::max(worst, std::abs(chi.at(i)(0) - expect));
      scale = std::max(scale, std::abs(expect));
    }
    CHECK(worst <= 1e-11 * scale);
  }
}

TEST_CASE("embedded vector round trip") {
  GridSpec s;
  s.n_r = 3;
  s.n_theta = 2;
  s.n_phi = 4;
  auto g = build_grid(s);
  Rng rng(157, "dump");
  EmbeddedVector v = embed(Model::weyl(), *random_packet(rng, 2), g);
  std::stringstream ss;
  write_embedded(ss, v);
  EmbeddedVector back = read_embedded(ss);
  CHECK(back.model == v.model);
  REQUIRE(back.blocks.size() == 4);
  CHECK(max_block_diff(back, v) == 0.0);
  CHECK(back.blocks[3].grid() == back.blocks[0].grid());
  std::stringstream bad("# mnl-block 0 of 2 model=nothing\n");
  CHECK_THROWS(read_embedded(bad));
}

TEST_CASE("embedding guards") {
  Rng rng(163, "guards");
  auto g = small_grid();
  CHECK_THROWS_AS(embed(Model::weyl(), *random_packet(rng, 4), g), DimensionMismatch);
  CHECK_THROWS_AS(embed(Model::vector_potential(), *random_packet(rng, 4), g), InvalidArgument);
  CHECK_THROWS_AS(embedding_insert(1, Vec4(1, 0, 0, -1)), OutOfChart);
}
