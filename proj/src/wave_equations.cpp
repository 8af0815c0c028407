#include "mnl/wave_equations.hpp"

#include <cmath>

namespace mnl {

std::string EquationId::name() const {
  switch (kind) {
  case EquationKind::weyl: return "weyl";
  case EquationKind::maxwell_F: return "maxwell_F";
  case EquationKind::maxwell_A: return "maxwell_A";
  case EquationKind::dirac: return "dirac";
  case EquationKind::proca: return "proca";
  case EquationKind::helicity: return "helicity(" + std::to_string(n) + ")";
  }
  return "?";
}

EquationId EquationId::parse(const std::string& s) {
  if (s == "weyl") return weyl();
  if (s == "maxwell_F") return maxwell_F();
  if (s == "maxwell_A") return maxwell_A();
  if (s == "dirac") return dirac();
  if (s == "proca") return proca();
  if (s.rfind("helicity(", 0) == 0 && s.back() == ')') {
    int n = std::stoi(s.substr(9, s.size() - 10));
    if (n < 1) throw InvalidArgument("helicity order must be >= 1");
    return helicity(n);
  }
  throw InvalidArgument("unknown equation id: " + s);
}

MatXc FiniteRep::apply(const Spin2d& A) const {
  if (!dirac) return rep_apply(label, A);
  MatXc D = MatXc::Zero(4, 4);
  D.topLeftCorner(2, 2) = A;
  D.bottomRightCorner(2, 2) = sl2_inverse(Spin2d(A.adjoint()));
  return D;
}

FiniteRep rep_for(EquationId eq) {
  switch (eq.kind) {
  case EquationKind::weyl: return FiniteRep::tensor({1, 0});
  case EquationKind::maxwell_F: return FiniteRep::tensor({2, 0});
  case EquationKind::maxwell_A: return FiniteRep::tensor({1, 1});
  case EquationKind::dirac: return FiniteRep::dirac_rep();
  case EquationKind::proca: return FiniteRep::tensor({1, 1});
  case EquationKind::helicity: return FiniteRep::tensor({eq.n, 0});
  }
  throw InvalidArgument("rep_for: unknown equation");
}

namespace {

MatXc e00() {
  MatXc m = MatXc::Zero(2, 2);
  m(0, 0) = 1;
  return m;
}

} // namespace

Projection projection_for(EquationId eq) {
  MatXc M;
  switch (eq.kind) {
  case EquationKind::weyl: M = e00(); break;
  case EquationKind::maxwell_F: M = kron<double>(e00(), e00()); break;
  case EquationKind::helicity: M = kron_power<double>(e00(), eq.n); break;
  case EquationKind::maxwell_A:
    M = MatXc::Identity(4, 4);
    M(3, 3) = 0;
    break;
  case EquationKind::dirac:
    M = MatXc::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      M(i, i) = 0.5;
      M(i, (i + 2) % 4) = 0.5;
    }
    break;
  case EquationKind::proca:
    M = MatXc::Identity(4, 4);
    M(0, 0) = M(3, 3) = 0.5;
    M(0, 3) = M(3, 0) = -0.5;
    break;
  }
  return {M, eq};
}

InvarianceDefect invariance_defect(const Projection& pi, const FiniteRep& rep, const std::vector<Spin2d>& sample) {
  const MatXc& P = pi.matrix;
  if (P.rows() != rep.dim()) throw DimensionMismatch("invariance_defect: projection and representation dimensions differ");
  InvarianceDefect out;
  for (const auto& g : sample) {
    MatXc D = rep.apply(g);
    MatXc DP = D * P;
    out.d1 = std::max(out.d1, (P * DP - DP).norm());
    out.d2 = std::max(out.d2, (P * D.adjoint() * DP - P).norm());
  }
  return out;
}

double commutation_defect(const Projection& pi, const FiniteRep& rep, const std::vector<Spin2d>& sample) {
  const MatXc& P = pi.matrix;
  if (P.rows() != rep.dim()) throw DimensionMismatch("commutation_defect: dimensions differ");
  double worst = 0;
  for (const auto& g : sample) {
    MatXc D = rep.apply(g);
    worst = std::max(worst, (P * D - D * P).norm());
  }
  return worst;
}

MatXc section_rep(EquationId eq, const Vec4& p, double mass, ChartGuard guard) {
  FiniteRep rep = rep_for(eq);
  if (eq.massive()) {
    if (!(mass > 0)) throw InvalidArgument("massive equation needs a positive mass");
    return rep.apply(massive_section(p, mass));
  }
  if (mass != 0) throw InvalidArgument("massless equation evaluated with nonzero mass");
  return rep.apply(massless_section(p, guard));
}

MomentumProjection momentum_projection(EquationId eq, const Vec4& p, double mass, ChartGuard guard) {
  MatXc D = section_rep(eq, p, mass, guard);
  // D(H^{-1}) = D(H)^{-1} for tensor powers, so no general inversion is needed
  Spin2d H = eq.massive() ? massive_section(p, mass) : massless_section(p, guard);
  MatXc Dinv = rep_for(eq).apply(sl2_inverse(H));
  return {p, D * projection_for(eq).matrix * Dinv};
}

Spin2d weyl_operator(const Vec4& p) { return momentum_to_matrix_hat(p); }

MatXc dirac_gamma(const Vec4& p) {
  MatXc g = MatXc::Zero(4, 4);
  g.topRightCorner(2, 2) = momentum_to_matrix(p);
  g.bottomLeftCorner(2, 2) = momentum_to_matrix_hat(p);
  return g;
}

VecXc rwe_residual(EquationId eq, const VecXc& phi, const Vec4& p, double mass) {
  auto need = [&](Eigen::Index d) {
    if (phi.size() != d) throw DimensionMismatch("rwe_residual: fibre dimension " + std::to_string(phi.size()) + " for " + eq.name());
  };
  switch (eq.kind) {
  case EquationKind::weyl:
    need(2);
    return weyl_operator(p) * phi;
  case EquationKind::maxwell_F:
  case EquationKind::helicity: {
    const int n = eq.kind == EquationKind::maxwell_F ? 2 : eq.n;
    need(1 << n);
    MatXc pd = pdagger_massless(p);
    MatXc C = kron<double>(pd, MatXc::Identity(1 << (n - 1), 1 << (n - 1)));
    return C * phi;
  }
  case EquationKind::maxwell_A: {
    need(4);
    VecXc r(1);
    r(0) = -(p(0) - p(3)) * phi(0) + cplx(p(1), p(2)) * phi(1) + cplx(p(1), -p(2)) * phi(2) - (p(0) + p(3)) * phi(3);
    return r;
  }
  case EquationKind::dirac:
    need(4);
    return dirac_gamma(p) * phi - mass * phi;
  case EquationKind::proca: {
    need(4);
    VecXc psi = w_s() * phi;
    VecXc r(1);
    r(0) = p(0) * psi(0) - p(1) * psi(1) - p(2) * psi(2) - p(3) * psi(3);
    return r;
  }
  }
  throw InvalidArgument("rwe_residual: unknown equation");
}

MatXc w_s() {
  const cplx i(0, 1);
  MatXc W(4, 4);
  W << 1, 0, 0, 1,
       0, 1, 1, 0,
       0, i, -i, 0,
       1, 0, 0, -1;
  return W / std::sqrt(2.0);
}

MatXc eta_minkowski() {
  MatXc e = MatXc::Zero(4, 4);
  e.diagonal() << 1, -1, -1, -1;
  return e;
}

MatXc eta_spinor() {
  MatXc e = MatXc::Zero(4, 4);
  e(0, 3) = e(3, 0) = -1;
  e(1, 1) = e(2, 2) = 1;
  return e;
}

VecXc highest_weight(int n) {
  VecXc v = VecXc::Zero(1 << n);
  v(0) = 1;
  return v;
}

} // namespace mnl
