#pragma once

// Projection registry for the relativistic wave equations and the momentum
// space equations they are equivalent to.

#include <string>
#include <vector>

#include "mnl/sections.hpp"

namespace mnl {

enum class EquationKind { weyl, maxwell_F, maxwell_A, dirac, proca, helicity };

struct EquationId {
  EquationKind kind = EquationKind::weyl;
  int n = 1; // only meaningful for helicity

  static EquationId weyl() { return {EquationKind::weyl, 1}; }
  static EquationId maxwell_F() { return {EquationKind::maxwell_F, 2}; }
  static EquationId maxwell_A() { return {EquationKind::maxwell_A, 0}; }
  static EquationId dirac() { return {EquationKind::dirac, 0}; }
  static EquationId proca() { return {EquationKind::proca, 0}; }
  static EquationId helicity(int n) { return {EquationKind::helicity, n}; }

  bool massive() const { return kind == EquationKind::dirac || kind == EquationKind::proca; }
  std::string name() const;
  static EquationId parse(const std::string& s);
  bool operator==(const EquationId&) const = default;
};

// The finite-dimensional representation the fibre carries: a tensor power
// D^(j/2,k/2), or the Dirac representation A (+) (A*)^{-1}.
struct FiniteRep {
  bool dirac = false;
  RepLabel label;

  int dim() const { return dirac ? 4 : label.dim(); }
  MatXc apply(const Spin2d& A) const;
  static FiniteRep tensor(RepLabel l) { return {false, l}; }
  static FiniteRep dirac_rep() { return {true, {1, 1}}; }
};

FiniteRep rep_for(EquationId eq);

struct Projection {
  MatXc matrix;
  EquationId label;
};

Projection projection_for(EquationId eq);

struct InvarianceDefect {
  double d1 = 0; // max |pi D pi - D pi|
  double d2 = 0; // max |pi D* D pi - pi|
};

InvarianceDefect invariance_defect(const Projection& pi, const FiniteRep& rep, const std::vector<Spin2d>& sample);

// max |[pi, D(g)]| over the sample
double commutation_defect(const Projection& pi, const FiniteRep& rep, const std::vector<Spin2d>& sample);

struct MomentumProjection {
  Vec4 p;
  MatXc matrix;
};

// D(H_p) pi D(H_p)^{-1}; massless section for massless equations (mass must
// be 0), massive section otherwise.
MomentumProjection momentum_projection(EquationId eq, const Vec4& p, double mass = 0, ChartGuard guard = {});

// D(H_p) for the fibre of eq.
MatXc section_rep(EquationId eq, const Vec4& p, double mass = 0, ChartGuard guard = {});

// The Weyl operator p0 s0 - p.s = 2 P-dagger.
Spin2d weyl_operator(const Vec4& p);

// gamma(p) = [[0, P], [p^, 0]]
MatXc dirac_gamma(const Vec4& p);

// Residual of the momentum-space equation:
//   weyl        W(p) phi
//   helicity(n) contraction of P-dagger into the first index, one component
//               per remaining multi-index (length 2^(n-1))
//   maxwell_F   = helicity(2)
//   maxwell_A   the scalar -(p0-p3)phi0 + (p1+ip2)phi1 + (p1-ip2)phi2 - (p0+p3)phi3
//   dirac       (gamma(p) - m) phi
//   proca       p0 psi0 - p.psi with psi = W_s phi
VecXc rwe_residual(EquationId eq, const VecXc& phi, const Vec4& p, double mass = 0);

// Unitary change of basis between C^2 (x) C^2 and Minkowski components.
MatXc w_s();
MatXc eta_minkowski();
// The spinorial metric as used in the (+-) pairing (sign as in the A-equation
// construction, so that D(H_p)(0,c1,c2,0) has norm |c1|^2 + |c2|^2).
MatXc eta_spinor();

// (x)^n e0: the vector (1,0) (x) ... (x) (1,0)
VecXc highest_weight(int n);

} // namespace mnl
