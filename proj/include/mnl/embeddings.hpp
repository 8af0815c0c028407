#pragma once

// Embeddings of test functions into the discretized solution spaces, the
// canonical representations, the isometries onto scalar L^2 data, and the
// causality pairings.
//
// Block layout. For the helicity-n model the fibre is (C^2)^{(x)n} and
//   block 0  D(H_p) D(N) D(conj H_p)^{-1} f^(p)                (h+)
//   block 1  D(conj H_p) D(N) D(H_p)^{-1} (Gamma_0 f)^(p)      (h-)
//   block 2  D(H_p) D(N) D(conj H_p)^{-1} f^(-p)               (h+, odd n)
//   block 3  D(conj H_p) D(N) D(H_p)^{-1} (Gamma_0 f)^(-p)     (h-, odd n)
// with N = [[0,1],[0,0]]. Odd n (the Weyl case n = 1) carries all four
// blocks, even n (Maxwell F for n = 2) the first two.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mnl/momentum_grid.hpp"
#include "mnl/test_functions.hpp"
#include "mnl/wave_equations.hpp"

namespace mnl {

enum class ModelKind { weyl, maxwell_F, helicity, vector_potential };

struct Model {
  ModelKind kind = ModelKind::weyl;
  int n = 1;

  static Model weyl() { return {ModelKind::weyl, 1}; }
  static Model maxwell_F() { return {ModelKind::maxwell_F, 2}; }
  static Model helicity(int n);
  static Model vector_potential() { return {ModelKind::vector_potential, 2}; }

  int fibre_dim() const { return 1 << n; }
  int blocks() const;
  bool fermionic() const { return n % 2 == 1; }
  // true for the h- blocks (1 and 3)
  static bool minus_block(int b) { return b % 2 == 1; }
  // blocks 2 and 3 see f^(-p) and carry exp(+i<p,a>) under translations
  static bool reflected_block(int b) { return b >= 2; }
  RepLabel test_label() const { return {0, n}; }
  EquationId equation() const;
  std::string name() const;
  static Model parse(const std::string& s);
  bool operator==(const Model&) const = default;
};

struct EmbeddedVector {
  Model model;
  std::vector<ConeFunction> blocks;

  const GridPtr& grid() const { return blocks.front().grid(); }
};

// Inner product of the model: beta_plus on h+ blocks, beta_minus on h-
// blocks, the eta pairing for the vector potential.
cplx model_inner_product(const EmbeddedVector& u, const EmbeddedVector& v);
double model_norm(const EmbeddedVector& u);
InnerProductKind block_kind(const Model& m, int block);

// (x)^n (H_p N conj(H_p)^{-1}); on the cone it factors as u r^T with
// u = (x)^n H_p e0 and r^T = (x)^n (row 1 of conj(H_p)^{-1}).
MatXc embedding_insert(int n, const Vec4& p, ChartGuard guard = {});

// Block values of the embedding at one momentum, evaluated analytically.
std::vector<VecXc> embed_at(const Model& m, const TestFunction& f, const Vec4& p, ChartGuard guard = {});
EmbeddedVector embed(const Model& m, const TestFunction& f, GridPtr grid);

// Gamma_0: componentwise complex conjugation.
ConeFunction gamma0(const ConeFunction& f);
// Gamma_1 phi = D(conj H_p) Gamma_0 D(H_p)^{-1} phi, from h+ to h-; sign = -1 gives the inverse map.
ConeFunction gamma1(const ConeFunction& phi, int n, int sign = 1);
// (a, b, c, d) -> (Gamma_1^{-1} d, Gamma_1 c, Gamma_1^{-1} b, Gamma_1 a); four-block models only.
EmbeddedVector gamma_w(const EmbeddedVector& v);
// P = diag(1, 1, 0, 0) and its complement.
EmbeddedVector basis_projection(const EmbeddedVector& v, bool complement = false);

// Largest relative residual of the model equation over all blocks and nodes,
// relative to the block norm at the node (nodes where a block vanishes count 0).
double embedded_residual(const EmbeddedVector& v);

// (U(g) chi)(p) = exp(-i<p,a>) w^n chi(Lambda_A^{-1} p), w = L(0,0) for sign +1
// and conj(L(0,0)) for sign -1, where L is the Wigner element.
struct RepApplyStats {
  std::size_t skipped = 0; // nodes whose preimage left the chart (value set to 0)
};
ConeFunction canonical_rep_apply(int sign, int n, const GroupElement& g, const std::function<cplx(const Vec4&)>& chi,
                                 GridPtr grid, RepApplyStats* stats = nullptr);
// Sampled data can only be transformed without leaving the grid: Lambda_A must be the identity.
ConeFunction canonical_rep_apply(int sign, int n, const GroupElement& g, const ConeFunction& chi);

// Phi_+ / Phi_-: chi(p) = first component of D(H_p)^{-1} phi(p) (sign +1) or
// D(conj H_p)^{-1} phi(p) (sign -1). Throws when phi is off the solution space.
ConeFunction iso_to_scalar(int sign, int n, const ConeFunction& phi, double tol = 1e-9);
// Inverse: phi(p) = D(H_p) (e0)^{(x)n} chi(p), or with conj(H_p).
ConeFunction scalar_to_solution(int sign, int n, const ConeFunction& chi);

struct IntertwiningResult {
  double defect = 0; // max_p |I(T(g) f)(p) - (V(g) I f)(p)| / scale
  double scale = 0;  // max_p |I f(p)|
  std::size_t skipped = 0;
  std::size_t nodes = 0;
};

// (V(g) I f)(p) for block b: exp(-+ i<p,a>) D(A or conj A) (I f)(Lambda_A^{-1} p)
std::vector<VecXc> v_apply_at(const Model& m, const GroupElement& g, const TestFunction& f, const Vec4& p,
                              ChartGuard guard = {});
IntertwiningResult intertwining_defect(const Model& m, const GroupElement& g, const TestFunction& f, const ConeGrid& grid);

struct CausalityResult {
  cplx pairing = 0; // Weyl: <I f, I k>_W; Maxwell F: sigma_F(I f, I k) as a real number
  double norm_f = 0;
  double norm_k = 0;
  double relative() const { return std::abs(pairing) / (norm_f * norm_k); }
};
CausalityResult causality_pairing(const Model& m, const TestFunction& f, const TestFunction& k, GridPtr grid);

struct PauliJordanResult {
  std::vector<double> epsilons;
  std::vector<MatXc> values;       // regulated integrals
  std::vector<MatXc> extrapolants; // first-order Richardson sequence
  MatXc extrapolant;
  double error = 0;  // |last - previous| of the Richardson sequence
  double scale = 0;  // |int exp(i p x) beta_n exp(-eps p0) dmu| at the first epsilon
};

// beta_n(p) = (x)^n conj(P-dagger(p)), a matrix of degree-n homogeneous polynomials.
MatXc pauli_jordan_beta(int n, const Vec4& p);
// int (exp(i<p,x>) -+ exp(-i<p,x>)) beta_n(p) exp(-eps p0) dmu_0(p), minus for
// even n and plus for odd n, for purely spatial x; Richardson in eps.
PauliJordanResult pauli_jordan_regulated(const Vec4& x, int n, std::vector<double> epsilons = {0.4, 0.2, 0.1, 0.05});

// D(H_p) (c0, c1, c2, 0) with D = H (x) conj(H): the Lorenz-gauge solutions.
ConeFunction lift_vector_potential(GridPtr grid, const std::function<cplx(const Vec4&)>& c0,
                                   const std::function<cplx(const Vec4&)>& c1,
                                   const std::function<cplx(const Vec4&)>& c2);

struct VectorPotentialPairing {
  cplx eta_pair = 0;             // sum_i w_i <phi, eta psi>
  ConeFunction chi_phi, chi_psi; // (chi_1, chi_2) per node, dimension 2
  cplx factor_pair = 0;          // <chi_phi, chi_psi>_l2
  double defect() const { return std::abs(eta_pair - factor_pair); }
};
// Inputs must solve the A-equation; throws otherwise.
VectorPotentialPairing vector_potential_pairings(const ConeFunction& phi, const ConeFunction& psi, double tol = 1e-9);
// Phi_AF: (phi+ (+) phi-) -> D(H_p)(0, chi+, chi-, 0) for a Maxwell F vector.
ConeFunction phi_af(const EmbeddedVector& f);

// M = int d^3p (1 + |p|^2)^{-4}, by quadrature after p = tan t.
double continuity_constant();

struct ContinuityResult {
  double lhs = 0;  // |I_1 f|_+^2
  double rhs = 0;  // M (sum_C |f^C|_{4,0})^2
  bool holds() const { return lhs <= rhs; }
};
ContinuityResult continuity_bound(const TestFunction& f, GridPtr grid, SeminormOptions opt = {});

// Columnar dump with one "# mnl-block <i> of <n> model=<name>" line before each block.
void write_embedded(std::ostream& os, const EmbeddedVector& v);
EmbeddedVector read_embedded(std::istream& is);

} // namespace mnl
