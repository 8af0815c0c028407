#include "doctest.h"

#include "mnl/random.hpp"
#include "mnl/sections.hpp"
#include "oracles.hpp"

using namespace mnl;
using oracle::max_diff;

namespace {

Spin2d diag2(cplx a, cplx b) {
  Spin2d D = Spin2d::Zero();
  D(0, 0) = a;
  D(1, 1) = b;
  return D;
}

} // namespace

TEST_CASE("massless section at hand-computed points") {
  CHECK(max_diff(massless_section(Vec4(1, 0, 0, 1)), Spin2d(-Spin2d::Identity())) <= 1e-15);
  CHECK(max_diff(massless_section(Vec4(2, 0, 0, 2)), diag2(-std::sqrt(2.0), -1 / std::sqrt(2.0))) <= 1e-15);
}

TEST_CASE("massless section guards") {
  CHECK_THROWS_AS(massless_section(Vec4(1, 0, 0, -1)), OutOfChart);
  CHECK_THROWS_AS(massless_section(Vec4(1, 0, 0, 0.5)), NotOnCone);
  CHECK_THROWS_AS(massless_section(Vec4(-1, 0, 0, 1)), NotOnCone);
  // just inside the guard
  double d = 2e-8;
  double p3 = -(1 - d);
  Vec4 p(1, std::sqrt(1 - p3 * p3), 0, p3);
  CHECK_NOTHROW(massless_section(p));
}

TEST_CASE("massless section defining identity, including near the excluded ray") {
  Rng rng(101, "sections-identity");
  Spin2d e = diag2(2, 0);
  double worst = 0, worst_det = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec4 p;
    if (i % 10 == 0) {
      // (p0+p3)/p0 = 10 delta_chart
      double p0 = rng.uniform(0.1, 10), s = 1e-7 * p0;
      double p3 = s - p0, perp = std::sqrt((p0 - p3) * (p0 + p3)), phi = rng.uniform(0, 2 * M_PI);
      p = Vec4(p0, perp * std::cos(phi), perp * std::sin(phi), p3);
    } else {
      p = rng.chart_point(0.01, 20, 1e-6);
    }
    Spin2d H = massless_section(p);
    worst = std::max(worst, max_diff(H * e * H.adjoint(), momentum_to_matrix(p)) / p(0));
    worst_det = std::max(worst_det, std::abs(H.determinant() - 1.0));
  }
  CHECK(worst <= 1e-9);
  CHECK(worst_det <= 1e-9);
}

TEST_CASE("massless section stays bounded near the excluded ray while its derivative blows up") {
  // H_p -> [[0, e^{-i phi}], [-e^{i phi}, 0]] as p3 -> -p0; its entries stay O(1)
  for (double s : {1e-2, 1e-4, 1e-6}) {
    double p3 = s - 1, perp = std::sqrt(1 - p3 * p3);
    Spin2d H = massless_section(Vec4(1, perp, 0, p3));
    CHECK(H.norm() < 2.0);
  }
}

TEST_CASE("massive section") {
  double m = 1.3;
  CHECK(max_diff(massive_section(Vec4(m, 0, 0, 0), m), Spin2d::Identity()) <= 1e-15);
  CHECK_THROWS_AS(massive_section(Vec4(1, 0, 0, 0), m), NotOnShell);
  Rng rng(7, "sections-massive");
  double worst = 0, worst_det = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec4 p = rng.on_shell(m, 10);
    Spin2d H = massive_section(p, m);
    Spin2d Hi = H.inverse();
    // oracle: (p0 - p.s)/m written out entrywise
    Spin2d Pd;
    Pd << cplx(p(0) - p(3)), cplx(-p(1), p(2)), cplx(-p(1), -p(2)), cplx(p(0) + p(3));
    Pd /= m;
    worst = std::max(worst, max_diff(Hi.adjoint() * Hi, Pd) / (p(0) / m));
    worst_det = std::max(worst_det, std::abs(H.determinant() - 1.0));
    CHECK(max_diff(H, H.adjoint()) <= 1e-15);
  }
  CHECK(worst <= 1e-11);
  CHECK(worst_det <= 1e-12);
}

TEST_CASE("Wigner elements") {
  Vec4 pbar(1, 0, 0, 1);
  Rng rng(13, "sections-wigner");

  auto id = wigner_element(Spin2d(Spin2d::Identity()), Vec4(2, 1, 1, std::sqrt(2.0)));
  CHECK(max_diff(id.L, Spin2d::Identity()) <= 1e-14);
  CHECK(std::abs(id.phase - 1.0) <= 1e-14);

  for (int i = 0; i < 50; ++i) {
    Spin2d L = euclidean2_element(rng.uniform(0, 4 * M_PI), cplx(rng.normal(), rng.normal()));
    CHECK(max_diff(wigner_element(L, pbar).L, L) <= 1e-12 * (1 + L.norm()));
  }

  double worst_ll = 0, worst_closed = 0, worst_cocycle = 0;
  for (int i = 0; i < 1000; ++i) {
    Spin2d A = rng.sl2c(1.5), B = rng.sl2c(1.5);
    Vec4 p = rng.chart_point(0.1, 10, 1e-2);
    auto w = wigner_element(A, p);
    worst_ll = std::max(worst_ll, std::abs(w.L(1, 0)));
    CHECK(std::abs(std::abs(w.phase) - 1) <= 1e-12);
    CHECK(std::abs(w.L.determinant() - 1.0) <= 1e-12);
    worst_closed = std::max(worst_closed, std::abs(w.phase - wigner_phase_closed_form(A, p)));
    Vec4 q = inverse_lorentz_action(A, p);
    if (chart_coordinate(q) < 1e-4 || chart_coordinate(inverse_lorentz_action(B, q)) < 1e-4) continue;
    auto wab = wigner_element(Spin2d(A * B), p);
    auto wb = wigner_element(B, q);
    worst_cocycle = std::max(worst_cocycle, std::abs(wab.phase - w.phase * wb.phase));
  }
  CHECK(worst_ll <= 1e-10);
  CHECK(worst_closed <= 1e-11);
  CHECK(worst_cocycle <= 1e-10);
}

TEST_CASE("massive Wigner rotation is unitary") {
  double m = 0.8;
  Rng rng(19, "sections-rotation");
  for (int i = 0; i < 200; ++i) {
    Spin2d U = rng.su2();
    Vec4 p = rng.on_shell(m, 8);
    Spin2d R = massive_wigner_element(U, p, m);
    CHECK(max_diff(R.adjoint() * R, Spin2d::Identity()) <= 1e-11);
  }
}
