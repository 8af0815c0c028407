#include "doctest.h"

#include "mnl/random.hpp"
#include "mnl/wave_equations.hpp"
#include "oracles.hpp"

using namespace mnl;
using oracle::max_diff;

namespace {

std::vector<Spin2d> e2_sample(Rng& rng) {
  auto s = e2_generators();
  for (int i = 0; i < 6; ++i) s.push_back(rng.e2());
  return s;
}

std::vector<Spin2d> su2_sample(Rng& rng) {
  std::vector<Spin2d> s;
  for (int i = 0; i < 20; ++i) s.push_back(rng.su2());
  return s;
}

// orthonormal basis of the kernel of a matrix
MatXc kernel(const MatXc& A) {
  Eigen::JacobiSVD<MatXc> svd(A, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

} // namespace

TEST_CASE("projection table entries") {
  const cplx h = 0.5;
  MatXc w(2, 2);
  w << 1, 0, 0, 0;
  CHECK(max_diff(projection_for(EquationId::weyl()).matrix, w) == 0.0);

  MatXc f = MatXc::Zero(4, 4);
  f(0, 0) = 1;
  CHECK(max_diff(projection_for(EquationId::maxwell_F()).matrix, f) == 0.0);

  MatXc a = MatXc::Identity(4, 4);
  a(3, 3) = 0;
  CHECK(max_diff(projection_for(EquationId::maxwell_A()).matrix, a) == 0.0);

  MatXc d(4, 4);
  d << h, 0, h, 0,
       0, h, 0, h,
       h, 0, h, 0,
       0, h, 0, h;
  CHECK(max_diff(projection_for(EquationId::dirac()).matrix, d) == 0.0);

  MatXc pr(4, 4);
  pr << h, 0, 0, -h,
        0, 1, 0, 0,
        0, 0, 1, 0,
        -h, 0, 0, h;
  CHECK(max_diff(projection_for(EquationId::proca()).matrix, pr) == 0.0);

  MatXc h3 = MatXc::Zero(8, 8);
  h3(0, 0) = 1;
  CHECK(max_diff(projection_for(EquationId::helicity(3)).matrix, h3) == 0.0);
  CHECK(max_diff(projection_for(EquationId::helicity(1)).matrix, w) == 0.0);
  CHECK(max_diff(projection_for(EquationId::helicity(2)).matrix, f) == 0.0);

  for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::maxwell_A(), EquationId::dirac(),
                  EquationId::proca(), EquationId::helicity(3)}) {
    MatXc P = projection_for(eq).matrix;
    CHECK(max_diff(P * P, P) <= 1e-15);
    CHECK(max_diff(P, P.adjoint()) == 0.0);
    CHECK(EquationId::parse(eq.name()) == eq);
  }
}

TEST_CASE("invariance of the projections under the little groups") {
  Rng rng(41, "wave-invariance");
  auto e2 = e2_sample(rng);
  for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::helicity(3)}) {
    auto d = invariance_defect(projection_for(eq), rep_for(eq), e2);
    CHECK(d.d1 <= 1e-12);
    CHECK(d.d2 <= 1e-12);
  }
  auto dA = invariance_defect(projection_for(EquationId::maxwell_A()), rep_for(EquationId::maxwell_A()),
                              {euclidean2_element(0.0, cplx(1, 0))});
  CHECK(dA.d1 <= 1e-12);
  CHECK(dA.d2 > 0.1);

  auto su2 = su2_sample(rng);
  for (auto eq : {EquationId::dirac(), EquationId::proca()}) {
    auto d = invariance_defect(projection_for(eq), rep_for(eq), su2);
    CHECK(d.d1 <= 1e-12);
    CHECK(commutation_defect(projection_for(eq), rep_for(eq), su2) <= 1e-12);
  }
  // a boost does not commute with the Proca projection
  Spin2d B = Spin2d::Zero();
  B(0, 0) = std::exp(0.5);
  B(1, 1) = std::exp(-0.5);
  CHECK(commutation_defect(projection_for(EquationId::proca()), rep_for(EquationId::proca()), {B}) > 0.1);

  CHECK_THROWS_AS(invariance_defect(projection_for(EquationId::weyl()), FiniteRep::tensor({2, 0}), e2), DimensionMismatch);
}

TEST_CASE("Dirac momentum projection is (m + gamma(p)) / 2m") {
  Rng rng(43, "wave-dirac");
  double m = 1.7;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec4 p = rng.on_shell(m, 10);
    // oracle gamma(p) written entrywise
    MatXc g = MatXc::Zero(4, 4);
    g(0, 2) = p(0) + p(3);
    g(0, 3) = cplx(p(1), -p(2));
    g(1, 2) = cplx(p(1), p(2));
    g(1, 3) = p(0) - p(3);
    g(2, 0) = p(0) - p(3);
    g(2, 1) = cplx(-p(1), p(2));
    g(3, 0) = cplx(-p(1), -p(2));
    g(3, 1) = p(0) + p(3);
    MatXc expect = (m * MatXc::Identity(4, 4) + g) / (2 * m);
    MatXc got = momentum_projection(EquationId::dirac(), p, m).matrix;
    worst = std::max(worst, max_diff(got, expect));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("momentum projections") {
  CHECK(max_diff(momentum_projection(EquationId::weyl(), Vec4(1, 0, 0, 1)).matrix,
                 projection_for(EquationId::weyl()).matrix) <= 1e-15);
  Rng rng(47, "wave-momentum");
  for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::maxwell_A(), EquationId::helicity(3)}) {
    for (int i = 0; i < 50; ++i) {
      Vec4 p = rng.chart_point(0.1, 10, 1e-2);
      MatXc P = momentum_projection(eq, p).matrix;
      CHECK(max_diff(P * P, P) <= 1e-10 * P.norm() * P.norm());
      CHECK(std::abs(P.trace() - projection_for(eq).matrix.trace()) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(momentum_projection(EquationId::weyl(), Vec4(1, 0, 0, -1)), OutOfChart);
  CHECK_THROWS_AS(momentum_projection(EquationId::proca(), Vec4(2, 0, 0, 0), 1.0), NotOnShell);
}

TEST_CASE("Weyl residuals of the two section columns") {
  Rng rng(53, "wave-weyl");
  for (int i = 0; i < 200; ++i) {
    Vec4 p = rng.chart_point(0.1, 10, 1e-3);
    Spin2d H = massless_section(p);
    VecXc up = H.col(0), down = H.col(1);
    CHECK(rwe_residual(EquationId::weyl(), up, p).norm() <= 1e-12 * p(0));
    Spin2d Hbi = Spin2d(H.conjugate()).inverse();
    Eigen::Vector2cd e1(0, 1);
    double expect = 2 * (Hbi.adjoint() * e1).norm();
    CHECK(std::abs(rwe_residual(EquationId::weyl(), down, p).norm() - expect) <= 1e-12 * p(0));
  }
}

TEST_CASE("equivalence between projection condition and wave equation") {
  Rng rng(59, "wave-equivalence");
  for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::maxwell_A(), EquationId::helicity(3),
                  EquationId::helicity(4)}) {
    const MatXc pi = projection_for(eq).matrix;
    const FiniteRep rep = rep_for(eq);
    MatXc sym = symmetrizer(rep.label);
    for (int i = 0; i < 100; ++i) {
      Vec4 p = rng.chart_point(0.1, 10, 1e-2);
      MatXc D = rep.apply(massless_section(p));
      MatXc Dinv = D.inverse();
      // forward: lift of random data in the range of pi
      VecXc chi = VecXc::Zero(pi.rows());
      for (int k = 0; k < chi.size(); ++k) chi(k) = rng.complex_normal();
      VecXc phi = D * (pi * chi);
      CHECK(rwe_residual(eq, phi, p).norm() <= 1e-11 * phi.norm() * p(0));
      // converse: random symmetric solution of the momentum equation
      MatXc R(0, pi.rows());
      {
        MatXc probe = MatXc::Identity(pi.rows(), pi.rows());
        MatXc rows(rwe_residual(eq, probe.col(0), p).size(), pi.rows());
        for (int k = 0; k < pi.rows(); ++k) rows.col(k) = rwe_residual(eq, probe.col(k), p);
        R = rows;
      }
      MatXc stacked(R.rows() + sym.rows(), pi.rows());
      stacked << R, (MatXc::Identity(pi.rows(), pi.rows()) - sym);
      MatXc K = kernel(stacked);
      REQUIRE(K.cols() >= 1);
      VecXc c(K.cols());
      for (int k = 0; k < c.size(); ++k) c(k) = rng.complex_normal();
      VecXc sol = K * c;
      VecXc t = Dinv * sol;
      CHECK((pi * t - t).norm() <= 1e-10 * t.norm());
    }
  }
}

TEST_CASE("Dirac: solutions of (gamma(p) - m) phi = 0 are fixed by the conjugated projection") {
  Rng rng(61, "wave-dirac-equivalence");
  double m = 0.9;
  for (int i = 0; i < 100; ++i) {
    Vec4 p = rng.on_shell(m, 6);
    MatXc D = section_rep(EquationId::dirac(), p, m);
    MatXc R(4, 4);
    for (int k = 0; k < 4; ++k) R.col(k) = rwe_residual(EquationId::dirac(), VecXc::Unit(4, k), p, m);
    MatXc K = kernel(R);
    CHECK(K.cols() == 2);
    VecXc t = D.inverse() * (K * Eigen::Vector2cd(rng.complex_normal(), rng.complex_normal()));
    MatXc pi = projection_for(EquationId::dirac()).matrix;
    CHECK((pi * t - t).norm() <= 1e-10 * t.norm());
  }
}

TEST_CASE("A-equation and the divergence form") {
  Rng rng(67, "wave-a");
  MatXc W = w_s();
  CHECK(max_diff(W.adjoint() * W, MatXc::Identity(4, 4)) <= 1e-15);
  for (int i = 0; i < 1000; ++i) {
    Vec4 p = rng.chart_point(0.1, 10, 1e-2);
    VecXc phi(4);
    for (int k = 0; k < 4; ++k) phi(k) = rng.complex_normal();
    VecXc psi = W * phi;
    cplx div = p(0) * psi(0) - p(1) * psi(1) - p(2) * psi(2) - p(3) * psi(3);
    cplx res = rwe_residual(EquationId::maxwell_A(), phi, p)(0);
    CHECK(std::abs(res + std::sqrt(2.0) * div) <= 1e-11 * p(0) * phi.norm());
  }
}

TEST_CASE("spinorial metric") {
  // W_s^{-1} eta_Mink W_s comes out as the negative of the metric used for
  // the pairing; both are preserved by D(1/2,1/2).
  MatXc W = w_s();
  MatXc conj_eta = W.inverse() * eta_minkowski() * W;
  CHECK(max_diff(conj_eta, MatXc(-eta_spinor())) <= 1e-15);

  Rng rng(71, "wave-eta");
  MatXc eta = eta_spinor();
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    MatXc D = rep_apply({1, 1}, rng.sl2c(1.5));
    worst = std::max(worst, max_diff(D.adjoint() * eta * D, eta) / D.squaredNorm());
  }
  CHECK(worst <= 1e-10);

  for (int i = 0; i < 100; ++i) {
    Vec4 p = rng.chart_point(0.1, 10, 1e-2);
    MatXc D = rep_apply({1, 1}, massless_section(p));
    VecXc v = D.col(0) * rng.complex_normal();
    CHECK(std::abs(v.dot(eta * v)) <= 1e-12 * v.squaredNorm());
    VecXc u = D * (VecXc(4) << 0, cplx(0.3, 1), cplx(-2, 0.5), 0).finished();
    CHECK(std::abs(u.dot(eta * u) - (std::norm(cplx(0.3, 1)) + std::norm(cplx(-2, 0.5)))) <= 1e-11 * u.squaredNorm());
  }
}

TEST_CASE("helicity residual dimension checks") {
  CHECK_THROWS_AS(rwe_residual(EquationId::weyl(), VecXc::Zero(4), Vec4(1, 0, 0, 1)), DimensionMismatch);
  CHECK_THROWS_AS(EquationId::parse("helicity(0)"), InvalidArgument);
  CHECK_THROWS_AS(EquationId::parse("spin-3"), InvalidArgument);
}
