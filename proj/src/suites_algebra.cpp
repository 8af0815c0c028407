// Suites for the finite-dimensional algebra: spinors, sections and Wigner
// elements, the projection registry, and the massive comparison cases.

#include <Eigen/SVD>

#include "mnl/errors.hpp"
#include "mnl/wave_equations.hpp"
#include "suites.hpp"

namespace mnl::suites {

namespace {

Spin2d diag2(cplx a, cplx b) {
  Spin2d D = Spin2d::Zero();
  D(0, 0) = a;
  D(1, 1) = b;
  return D;
}

MatXc nilpotent() {
  MatXc N = MatXc::Zero(2, 2);
  N(0, 1) = 1;
  return N;
}

double line_overlap(const MatXc& a, const MatXc& b) {
  return std::abs((a.adjoint() * b).trace()) / (a.norm() * b.norm());
}

std::vector<MatXc> as_rep(RepLabel lab, const std::vector<Spin2d>& g) {
  std::vector<MatXc> out;
  for (const auto& x : g) out.push_back(rep_apply(lab, x));
  return out;
}

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

MatXc kernel(const MatXc& A) {
  Eigen::JacobiSVD<MatXc> svd(A, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

// The registry entries written out by hand.
MatXc transcribed(EquationId eq) {
  const cplx h = 0.5;
  MatXc m;
  switch (eq.kind) {
  case EquationKind::weyl:
    m = MatXc::Zero(2, 2);
    m(0, 0) = 1;
    break;
  case EquationKind::maxwell_F:
    m = MatXc::Zero(4, 4);
    m(0, 0) = 1;
    break;
  case EquationKind::maxwell_A:
    m = MatXc::Identity(4, 4);
    m(3, 3) = 0;
    break;
  case EquationKind::dirac:
    m.resize(4, 4);
    m << h, 0, h, 0,
         0, h, 0, h,
         h, 0, h, 0,
         0, h, 0, h;
    break;
  case EquationKind::proca:
    m.resize(4, 4);
    m << h, 0, 0, -h,
         0, 1, 0, 0,
         0, 0, 1, 0,
         -h, 0, 0, h;
    break;
  case EquationKind::helicity:
    m = MatXc::Zero(1 << eq.n, 1 << eq.n);
    m(0, 0) = 1;
    break;
  }
  return m;
}

// d H_p / d p1 by central differences of the closed formula, at distance s
// from the excluded ray.
double section_derivative(double s) {
  double p3 = s - 1, perp = std::sqrt(1 - p3 * p3);
  double h = 1e-3 * s;
  Vec4 a(1, perp + h, 0, p3), b(1, perp - h, 0, p3);
  return (massless_section_formula(a) - massless_section_formula(b)).norm() / (2 * h);
}

} // namespace

void spinor(Context& c) {
  c.check("spinor.momentum_matrix_base_point", "the base momentum (1,0,0,1) maps to diag(2,0)", 0, "<=", [] {
    return max_diff(momentum_to_matrix(Vec4(1, 0, 0, 1)), diag2(2, 0));
  });
  c.check("spinor.momentum_roundtrip", "momentum_to_matrix and the trace formulas invert each other", 1e-13, "<=",
          [&] {
            Rng rng = c.rng("spinor-roundtrip");
            double worst = 0;
            for (int i = 0; i < 10000; ++i) {
              Vec4 p = rng.vec4(5);
              worst = std::max(worst, (matrix_to_momentum(momentum_to_matrix(p)) - p).cwiseAbs().maxCoeff());
            }
            return worst;
          });
  c.check("spinor.det_is_minkowski_square", "det of the momentum matrix is the Minkowski square", 1e-11, "<=", [&] {
    Rng rng = c.rng("spinor-det");
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
      Vec4 p = rng.vec4(5);
      cplx d = momentum_to_matrix(p).determinant();
      double m2 = p(0) * p(0) - p(1) * p(1) - p(2) * p(2) - p(3) * p(3);
      worst = std::max(worst, std::abs(d - m2) / p.squaredNorm());
    }
    return worst;
  });
  c.check("spinor.boost_example", "diag(e^{s/2}, e^{-s/2}) maps (1,0,0,1) to (e^s,0,0,e^s)", 1e-14, "<=", [] {
    double s = 0.7;
    return max_diff(lorentz_action(diag2(std::exp(s / 2), std::exp(-s / 2)), Vec4(1, 0, 0, 1)),
                    Vec4(std::exp(s), 0, 0, std::exp(s)));
  });
  c.check("spinor.lorentz_homomorphism", "Lambda_{AB} = Lambda_A Lambda_B on random pairs", 1e-11, "<=", [&] {
    Rng rng = c.rng("spinor-lorentz");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Spin2d A = rng.sl2c(1.5), B = rng.sl2c(1.5);
      Vec4 q = rng.vec4(3);
      Vec4 lhs = lorentz_action(Spin2d(A * B), q);
      worst = std::max(worst, (lhs - lorentz_action(A, lorentz_action(B, q))).norm() / lhs.norm());
    }
    return worst;
  });
  c.check("spinor.sign_invariance", "A and -A give the same Lorentz transformation", 0, "<=", [&] {
    Rng rng = c.rng("spinor-sign");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Spin2d A = rng.sl2c(1.5);
      Vec4 q = rng.vec4(3);
      worst = std::max(worst, max_diff(lorentz_action(Spin2d(-A), q), lorentz_action(A, q)));
    }
    return worst;
  });
  c.check("spinor.rep_identity", "D(I) on (C^2)^{(x)2} is the 4x4 identity", 0, "<=",
          [] { return max_diff(rep_apply({2, 0}, Spin2d::Identity()), MatXc::Identity(4, 4)); });
  c.check("spinor.rep_explicit_e2", "D on C^2 (x) conj C^2 restricted to E(2) is the explicit upper-triangular matrix",
          1e-14, "<=", [] {
            double th = 0.9;
            cplx z(0.4, -1.3);
            cplx e(std::cos(th), std::sin(th));
            MatXc expect(4, 4);
            expect << 1.0, e * std::conj(z), std::conj(e) * z, std::norm(z),
                      0.0, e, 0.0, z,
                      0.0, 0.0, std::conj(e), std::conj(z),
                      0.0, 0.0, 0.0, 1.0;
            return max_diff(rep_apply({1, 1}, euclidean2_element(th, z)), expect);
          });
  c.check("spinor.rep_homomorphism", "D(AB) = D(A) D(B) for tensor labels up to rank 3", 1e-11, "<=", [&] {
    Rng rng = c.rng("spinor-rep");
    double worst = 0;
    for (RepLabel lab : {RepLabel{2, 0}, RepLabel{1, 1}, RepLabel{2, 1}, RepLabel{3, 0}})
      for (int i = 0; i < 50; ++i) {
        Spin2d A = rng.sl2c(1.0), B = rng.sl2c(1.0);
        worst = std::max(worst, max_diff(rep_apply(lab, Spin2d(A * B)), rep_apply(lab, A) * rep_apply(lab, B)));
      }
    return worst;
  });
  c.check("spinor.symmetrizer_commutes", "the symmetrizer commutes with every D(A)", 1e-11, "<=", [&] {
    Rng rng = c.rng("spinor-sym");
    double worst = 0;
    for (RepLabel lab : {RepLabel{2, 0}, RepLabel{2, 1}, RepLabel{3, 0}}) {
      MatXc S = symmetrizer(lab);
      for (int i = 0; i < 50; ++i) {
        MatXc D = rep_apply(lab, rng.sl2c(1.0));
        worst = std::max(worst, max_diff(S * D, D * S));
      }
    }
    return worst;
  });
  c.check("spinor.e2_double_cover", "the E(2) element at angle 2 pi is -1", 1e-15, "<=",
          [] { return max_diff(euclidean2_element(2 * M_PI, cplx(0)), Spin2d(-Spin2d::Identity())); });
  c.check("spinor.e2_stabilizer", "E(2) elements fix the base momentum (1,0,0,1)", 1e-12, "<=", [&] {
    Rng rng = c.rng("spinor-e2");
    Vec4 pbar(1, 0, 0, 1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Spin2d L = rng.e2();
      worst = std::max(worst, max_diff(lorentz_action(L, pbar), pbar) / (1 + L.squaredNorm()));
    }
    return worst;
  });

  auto gens = e2_generators();
  c.check("spinor.intertwiner_weyl_dim", "one intertwiner between the two Weyl representations of E(2)", 0, "<=",
          [&] { return std::abs(double(intertwiner_space(as_rep({1, 0}, gens), as_rep({0, 1}, gens)).size()) - 1); });
  c.check("spinor.intertwiner_weyl_line", "the Weyl intertwiner spans the nilpotent [[0,1],[0,0]]", 1e-12, "<=", [&] {
    auto w = intertwiner_space(as_rep({1, 0}, gens), as_rep({0, 1}, gens));
    return 1 - line_overlap(w.at(0), nilpotent());
  });
  c.check("spinor.intertwiner_self", "the self-intertwiners of D(1/2,0) on E(2) are multiples of 1", 1e-12, "<=", [&] {
    auto w = intertwiner_space(as_rep({1, 0}, gens), as_rep({1, 0}, gens));
    if (w.size() != 1) return 1.0;
    return 1 - line_overlap(w[0], MatXc::Identity(2, 2));
  });
  c.check("spinor.intertwiner_maxwell", "the D(1,0) to D(0,1) intertwiner on E(2) is N (x) N", 1e-12, "<=", [&] {
    auto w = intertwiner_space<double>(RepLabel{2, 0}, RepLabel{0, 2}, gens);
    if (w.size() != 1) return 1.0;
    return 1 - line_overlap(w[0], kron<double>(nilpotent(), nilpotent()));
  });
  c.check("spinor.intertwiner_sample_stable", "intertwiner dimensions do not change with 6 extra E(2) elements", 0, "<=",
          [&] {
            Rng rng = c.rng("spinor-intertwiner");
            auto more = gens;
            for (int i = 0; i < 6; ++i) more.push_back(rng.e2());
            double d1 = double(intertwiner_space(as_rep({1, 0}, more), as_rep({0, 1}, more)).size());
            double d2 = double(intertwiner_space<double>(RepLabel{2, 0}, RepLabel{0, 2}, more).size());
            return std::abs(d1 - 1) + std::abs(d2 - 1);
          });
}

void sections(Context& c) {
  c.check("sections.base_points", "H at (1,0,0,1) is -1 and at (2,0,0,2) is diag(-sqrt2, -1/sqrt2)", 1e-15, "<=", [] {
    return std::max(max_diff(massless_section(Vec4(1, 0, 0, 1)), Spin2d(-Spin2d::Identity())),
                    max_diff(massless_section(Vec4(2, 0, 0, 2)), diag2(-std::sqrt(2.0), -1 / std::sqrt(2.0))));
  });
  c.check("sections.chart_guard", "the massless section refuses p on the excluded ray", 0, "<=",
          [] { return throws<OutOfChart>([] { massless_section(Vec4(1, 0, 0, -1)); }); });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  double worst_id = nan, worst_det = nan;
  auto run_identity = [&] {
    worst_id = worst_det = 0;
    Rng rng = c.rng("sections-identity");
    Spin2d e = diag2(2, 0);
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
      worst_id = std::max(worst_id, max_diff(H * e * H.adjoint(), momentum_to_matrix(p)) / p(0));
      worst_det = std::max(worst_det, std::abs(H.determinant() - 1.0));
    }
    return worst_id;
  };
  c.check("sections.defining_identity", "H_p diag(2,0) H_p* = P over 1e4 chart points, some near the excluded ray",
          1e-9, "<=", run_identity);
  c.check("sections.determinant", "det H_p = 1 over the same sample", 1e-9, "<=", [&] { return worst_det; });

  c.check("sections.derivative_slope", "|dH_p/dp| grows like (p0+p3)^{-1/2} near the excluded ray (log-log slope)",
          0.1, "<=", [] {
            // least-squares slope of log |dH| against log s, compared with -1/2
            std::vector<double> xs, ys;
            for (double s = 1e-2; s >= 1e-6; s /= 10) {
              xs.push_back(std::log(s));
              ys.push_back(std::log(section_derivative(s)));
            }
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
            mx /= xs.size();
            my /= ys.size();
            double sxy = 0, sxx = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              sxy += (xs[i] - mx) * (ys[i] - my);
              sxx += (xs[i] - mx) * (xs[i] - mx);
            }
            return sxy / sxx + 0.5;
          });

  c.check("sections.wigner_identity", "A = 1 gives L = 1 and phase 1", 1e-14, "<=", [] {
    auto w = wigner_element(Spin2d(Spin2d::Identity()), Vec4(2, 1, 1, std::sqrt(2.0)));
    return std::max(max_diff(w.L, Spin2d::Identity()), std::abs(w.phase - 1.0));
  });
  c.check("sections.wigner_base_point", "for A in E(2) at the base momentum the Wigner element is A", 1e-12, "<=", [&] {
    Rng rng = c.rng("sections-e2");
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      Spin2d L = rng.e2();
      worst = std::max(worst, max_diff(wigner_element(L, Vec4(1, 0, 0, 1)).L, L) / (1 + L.norm()));
    }
    return worst;
  });

  double lower_left = nan, det_dev = nan, mod_dev = nan, closed = nan, cocycle = nan;
  auto run_wigner = [&] {
    lower_left = det_dev = mod_dev = closed = cocycle = 0;
    Rng rng = c.rng("sections-wigner");
    for (int i = 0; i < 1000; ++i) {
      Spin2d A = rng.sl2c(1.5), B = rng.sl2c(1.5);
      Vec4 p = rng.chart_point(0.1, 10, 1e-2);
      auto w = wigner_element(A, p);
      lower_left = std::max(lower_left, std::abs(w.L(1, 0)));
      det_dev = std::max(det_dev, std::abs(w.L.determinant() - 1.0));
      mod_dev = std::max(mod_dev, std::abs(std::abs(w.phase) - 1));
      closed = std::max(closed, std::abs(w.phase - wigner_phase_closed_form(A, p)));
      Vec4 q = inverse_lorentz_action(A, p);
      if (chart_coordinate(q) < 1e-4 || chart_coordinate(inverse_lorentz_action(B, q)) < 1e-4) continue;
      auto wab = wigner_element(Spin2d(A * B), p);
      auto wb = wigner_element(B, q);
      cocycle = std::max(cocycle, std::abs(wab.phase - w.phase * wb.phase));
    }
    return lower_left;
  };
  c.check("sections.wigner_in_e2", "Wigner elements are upper triangular (lower-left entry) over 1e3 samples", 1e-10,
          "<=", run_wigner);
  c.check("sections.wigner_det", "Wigner elements have determinant 1", 1e-12, "<=", [&] { return det_dev; });
  c.check("sections.wigner_phase_modulus", "Wigner phases have modulus 1", 1e-12, "<=", [&] { return mod_dev; });
  c.check("sections.wigner_phase_closed_form", "the phase equals (-b(p1+ip2) + d(p0+p3))/|...|", 1e-11, "<=",
          [&] { return closed; });
  c.check("sections.phase_cocycle", "phase(AB,p) = phase(A,p) phase(B, Lambda_A^{-1} p)", 1e-10, "<=",
          [&] { return cocycle; });
}

void wave_eq(Context& c) {
  const std::vector<EquationId> table = {EquationId::weyl(),  EquationId::maxwell_F(), EquationId::maxwell_A(),
                                         EquationId::dirac(), EquationId::proca(),     EquationId::helicity(3)};
  for (auto eq : table)
    c.check("wave.table." + eq.name(), "registry projection equals the transcribed rational matrix", 0, "<=",
            [eq] { return max_diff(projection_for(eq).matrix, transcribed(eq)); });
  c.check("wave.table.projections", "every registry entry is idempotent and self-adjoint", 1e-12, "<=", [&] {
    double worst = 0;
    for (auto eq : table) {
      MatXc P = projection_for(eq).matrix;
      worst = std::max({worst, max_diff(P * P, P), max_diff(P, P.adjoint())});
    }
    return worst;
  });

  Rng rng = c.rng("wave-invariance");
  auto e2 = e2_sample(rng);
  auto su2 = su2_sample(rng);
  for (auto eq : table) {
    const auto& sample = eq.massive() ? su2 : e2;
    c.check("wave.invariance_d1." + eq.name(), "pi D(L) pi = D(L) pi on the little group sample", 1e-12, "<=",
            [eq, &sample] { return invariance_defect(projection_for(eq), rep_for(eq), sample).d1; });
  }
  for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::helicity(3)})
    c.check("wave.isometry_d2." + eq.name(), "pi D(L)* D(L) pi = pi on E(2)", 1e-12, "<=",
            [eq, &e2] { return invariance_defect(projection_for(eq), rep_for(eq), e2).d2; });
  c.check("wave.isometry_d2.maxwell_A", "the isometry condition fails for the A-equation at |z| = 1", 0.1, ">=", [&] {
    auto s = e2;
    s.push_back(euclidean2_element(0.0, cplx(1, 0)));
    return invariance_defect(projection_for(EquationId::maxwell_A()), rep_for(EquationId::maxwell_A()), s).d2;
  });
  for (auto eq : {EquationId::dirac(), EquationId::proca()})
    c.check("wave.commutation." + eq.name(), "the massive projection commutes with D(U) for U in SU(2)", 1e-12, "<=",
            [eq, &su2] { return commutation_defect(projection_for(eq), rep_for(eq), su2); });

  c.check("wave.weyl_base_point", "pi(p) at the base momentum is diag(1,0)", 1e-15, "<=", [] {
    return max_diff(momentum_projection(EquationId::weyl(), Vec4(1, 0, 0, 1)).matrix,
                    projection_for(EquationId::weyl()).matrix);
  });
  c.check("wave.momentum_projection", "pi(p) is idempotent with the trace of pi", 1e-10, "<=", [&] {
    Rng r = c.rng("wave-momentum");
    double worst = 0;
    for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::maxwell_A(), EquationId::helicity(3)})
      for (int i = 0; i < 100; ++i) {
        Vec4 p = r.chart_point(0.1, 10, 1e-2);
        MatXc P = momentum_projection(eq, p).matrix;
        worst = std::max(worst, max_diff(P * P, P) / P.squaredNorm());
        worst = std::max(worst, std::abs(P.trace() - projection_for(eq).matrix.trace()));
      }
    return worst;
  });
  c.check("wave.weyl_residual_up", "W(p) H_p (1,0) = 0", 1e-12, "<=", [&] {
    Rng r = c.rng("wave-weyl");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec4 p = r.chart_point(0.1, 10, 1e-3);
      VecXc up = massless_section(p).col(0);
      worst = std::max(worst, rwe_residual(EquationId::weyl(), up, p).norm() / p(0));
    }
    return worst;
  });
  c.check("wave.weyl_residual_down", "|W(p) H_p (0,1)| = 2 |(conj(H_p)^{-1})* (0,1)|", 1e-12, "<=", [&] {
    Rng r = c.rng("wave-weyl-down");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec4 p = r.chart_point(0.1, 10, 1e-3);
      Spin2d H = massless_section(p);
      Spin2d Hbi = Spin2d(H.conjugate()).inverse();
      double expect = 2 * (Hbi.adjoint() * Eigen::Vector2cd(0, 1)).norm();
      worst = std::max(worst, std::abs(rwe_residual(EquationId::weyl(), VecXc(H.col(1)), p).norm() - expect) / p(0));
    }
    return worst;
  });

  double forward = std::numeric_limits<double>::quiet_NaN(), converse = forward;
  auto run_equivalence = [&] {
    forward = converse = 0;
    Rng r = c.rng("wave-equivalence");
    for (auto eq : {EquationId::weyl(), EquationId::maxwell_F(), EquationId::maxwell_A(), EquationId::helicity(3),
                    EquationId::helicity(4)}) {
      const MatXc pi = projection_for(eq).matrix;
      const FiniteRep rep = rep_for(eq);
      const int d = static_cast<int>(pi.rows());
      MatXc sym = symmetrizer(rep.label);
      for (int i = 0; i < 200; ++i) {
        Vec4 p = r.chart_point(0.1, 10, 1e-2);
        MatXc D = rep.apply(massless_section(p));
        VecXc chi(d);
        for (int k = 0; k < d; ++k) chi(k) = r.complex_normal();
        VecXc phi = D * (pi * chi);
        forward = std::max(forward, rwe_residual(eq, phi, p).norm() / (phi.norm() * p(0)));
        // random solution of the momentum equation on the symmetric subspace
        MatXc R(rwe_residual(eq, VecXc::Unit(d, 0), p).size(), d);
        for (int k = 0; k < d; ++k) R.col(k) = rwe_residual(eq, VecXc::Unit(d, k), p);
        MatXc stacked(R.rows() + d, d);
        stacked << R, (MatXc::Identity(d, d) - sym);
        MatXc K = kernel(stacked);
        if (K.cols() == 0) return std::numeric_limits<double>::infinity();
        VecXc coef(K.cols());
        for (int k = 0; k < coef.size(); ++k) coef(k) = r.complex_normal();
        VecXc t = D.inverse() * (K * coef);
        converse = std::max(converse, (pi * t - t).norm() / t.norm());
      }
    }
    return forward;
  };
  c.check("wave.equivalence_forward", "lifts D(H_p) pi chi solve the momentum-space equation", 1e-11, "<=",
          run_equivalence);
  c.check("wave.equivalence_converse", "solutions of the momentum-space equation are pi-fixed after D(H_p)^{-1}",
          1e-10, "<=", [&] { return converse; });
  c.check("wave.maxwell_A_divergence", "the A-equation equals -sqrt2 times the divergence of W_s phi", 1e-11, "<=", [&] {
    Rng r = c.rng("wave-a");
    MatXc W = w_s();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec4 p = r.chart_point(0.1, 10, 1e-2);
      VecXc phi(4);
      for (int k = 0; k < 4; ++k) phi(k) = r.complex_normal();
      VecXc psi = W * phi;
      cplx div = p(0) * psi(0) - p(1) * psi(1) - p(2) * psi(2) - p(3) * psi(3);
      cplx res = rwe_residual(EquationId::maxwell_A(), phi, p)(0);
      worst = std::max(worst, std::abs(res + std::sqrt(2.0) * div) / (p(0) * phi.norm()));
    }
    return worst;
  });
  c.check("wave.eta_conjugation", "W_s^{-1} eta_Mink W_s is the spinorial metric up to its sign convention", 1e-15,
          "<=", [] {
            MatXc W = w_s();
            return max_diff(MatXc(W.inverse() * eta_minkowski() * W), MatXc(-eta_spinor()));
          });
  c.check("wave.eta_invariance", "D(A)* eta D(A) = eta on C^2 (x) conj C^2", 1e-10, "<=", [&] {
    Rng r = c.rng("wave-eta");
    MatXc eta = eta_spinor();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      MatXc D = rep_apply({1, 1}, r.sl2c(1.5));
      worst = std::max(worst, max_diff(D.adjoint() * eta * D, eta) / D.squaredNorm());
    }
    return worst;
  });
  c.check("wave.eta_degenerate", "D(H_p)(chi,0,0,0) has zero eta self-pairing", 1e-12, "<=", [&] {
    Rng r = c.rng("wave-eta-degenerate");
    MatXc eta = eta_spinor();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec4 p = r.chart_point(0.1, 10, 1e-2);
      VecXc v = rep_apply({1, 1}, massless_section(p)).col(0) * r.complex_normal();
      worst = std::max(worst, std::abs(v.dot(eta * v)) / v.squaredNorm());
    }
    return worst;
  });
}

void massive(Context& c) {
  const double m = 0.8;
  c.check("massive.section_base_point", "the massive section at rest is the identity", 1e-15, "<=",
          [m] { return max_diff(massive_section(Vec4(m, 0, 0, 0), m), Spin2d::Identity()); });
  double worst_det = std::numeric_limits<double>::quiet_NaN();
  c.check("massive.pdagger", "(H_p^{-1})* H_p^{-1} = (p0 - p.sigma)/m over 1e4 shell points", 1e-11, "<=", [&] {
    Rng rng = c.rng("massive-pdagger");
    double worst = 0;
    worst_det = 0;
    for (int i = 0; i < 10000; ++i) {
      Vec4 p = rng.on_shell(m, 10);
      Spin2d H = massive_section(p, m);
      Spin2d Hi = H.inverse();
      Spin2d Pd;
      Pd << cplx(p(0) - p(3)), cplx(-p(1), p(2)), cplx(-p(1), -p(2)), cplx(p(0) + p(3));
      Pd /= m;
      worst = std::max(worst, max_diff(Hi.adjoint() * Hi, Pd) / (p(0) / m));
      worst_det = std::max(worst_det, std::abs(H.determinant() - 1.0));
    }
    return worst;
  });
  c.check("massive.section_det", "det H_p = 1 on the mass shell", 1e-12, "<=", [&] { return worst_det; });
  c.check("massive.wigner_rotation", "H_p^{-1} U H_q is unitary for U in SU(2)", 1e-11, "<=", [&] {
    Rng rng = c.rng("massive-rotation");
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Spin2d R = massive_wigner_element(rng.su2(), rng.on_shell(m, 8), m);
      worst = std::max(worst, max_diff(R.adjoint() * R, Spin2d::Identity()));
    }
    return worst;
  });
  c.check("massive.dirac_projection", "pi_Dirac(p) = (m + gamma(p))/2m over 1e3 shell points", 1e-11, "<=", [&] {
    Rng rng = c.rng("massive-dirac");
    const double md = 1.7;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      Vec4 p = rng.on_shell(md, 10);
      MatXc g = MatXc::Zero(4, 4);
      g(0, 2) = p(0) + p(3);
      g(0, 3) = cplx(p(1), -p(2));
      g(1, 2) = cplx(p(1), p(2));
      g(1, 3) = p(0) - p(3);
      g(2, 0) = p(0) - p(3);
      g(2, 1) = cplx(-p(1), p(2));
      g(3, 0) = cplx(-p(1), -p(2));
      g(3, 1) = p(0) + p(3);
      MatXc expect = (md * MatXc::Identity(4, 4) + g) / (2 * md);
      worst = std::max(worst, max_diff(momentum_projection(EquationId::dirac(), p, md).matrix, expect));
    }
    return worst;
  });
  c.check("massive.proca_commutation", "pi_Proca commutes with D(U) on an SU(2) sample", 1e-12, "<=", [&] {
    Rng rng = c.rng("massive-proca");
    std::vector<Spin2d> s;
    for (int i = 0; i < 100; ++i) s.push_back(rng.su2());
    return commutation_defect(projection_for(EquationId::proca()), rep_for(EquationId::proca()), s);
  });
  c.check("massive.proca_boost", "a boost does not commute with the Proca projection", 0.1, ">=", [] {
    return commutation_defect(projection_for(EquationId::proca()), rep_for(EquationId::proca()),
                              {diag2(std::exp(0.5), std::exp(-0.5))});
  });
  c.check("massive.dirac_equivalence", "solutions of (gamma(p) - m) phi = 0 are fixed by the conjugated projection",
          1e-10, "<=", [&] {
            Rng rng = c.rng("massive-dirac-equivalence");
            const double md = 0.9;
            MatXc pi = projection_for(EquationId::dirac()).matrix;
            double worst = 0;
            for (int i = 0; i < 200; ++i) {
              Vec4 p = rng.on_shell(md, 6);
              MatXc D = section_rep(EquationId::dirac(), p, md);
              MatXc R(4, 4);
              for (int k = 0; k < 4; ++k) R.col(k) = rwe_residual(EquationId::dirac(), VecXc::Unit(4, k), p, md);
              MatXc K = kernel(R);
              if (K.cols() != 2) return std::numeric_limits<double>::infinity();
              VecXc t = D.inverse() * (K * Eigen::Vector2cd(rng.complex_normal(), rng.complex_normal()));
              worst = std::max(worst, (pi * t - t).norm() / t.norm());
            }
            return worst;
          });
  c.check("massive.shell_grid", "shell grid integrates e^{-E} against d^3p/2E to 2 pi m K_1(m)", 1e-10, "<=", [&] {
    GridSpec s;
    s.kind = ShellKind::shell;
    s.mass = 1.5;
    s.n_r = 64;
    s.n_theta = 16;
    s.n_phi = 32;
    s.r_max = 30;
    s.seed = c.config().seed;
    auto g = build_grid(s);
    std::vector<double> terms(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) terms[i] = g->weights[i] * std::exp(-g->nodes[i](0));
    double exact = 2 * M_PI * 1.5 * std::cyl_bessel_k(1.0, 1.5);
    return std::abs(pairwise_sum(terms) - exact) / exact;
  });
}

} // namespace mnl::suites
