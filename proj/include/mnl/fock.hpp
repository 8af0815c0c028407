#pragma once

// Truncated Fock spaces over a finite orthonormal one-particle basis, the
// ladder operators on them and the free Weyl and Maxwell field operators.
//
// Operators are stored sparse: a field operator has at most d nonzeros per
// column, and the bosonic spaces reach a few thousand states.

#include <Eigen/Sparse>

#include <map>
#include <vector>

#include "mnl/embeddings.hpp"

namespace mnl {

enum class Statistics { fermi, bose };

using FockOperator = Eigen::SparseMatrix<cplx>;

// Orthonormal basis e_k = sum_j coeffs(j, k) sources[j] of the span of the
// sources under the model inner product.
struct OneParticleBasis {
  std::vector<EmbeddedVector> sources;
  MatXc gram;   // <sources[i], sources[j]>
  MatXc coeffs; // sources.size() x dim()
  double rank_tol = 1e-10;

  int dim() const { return static_cast<int>(coeffs.cols()); }
  // max |G' - G| / max |G| with G' rebuilt from the basis expansion of the sources
  double gram_defect() const;
  // alpha_k = <e_k, u>. Throws InvalidArgument when u is not in the span:
  // the residual |u - sum alpha_k e_k| may not exceed tol |u| plus a
  // roundoff floor of 1e-12 times the largest source norm.
  VecXc coordinates(const EmbeddedVector& u, double tol = 1e-8) const;
};

// Modified Gram-Schmidt with one re-orthogonalization pass, carried out on the
// Gram matrix; directions with norm below rank_tol times the largest source
// norm are dropped.
OneParticleBasis orthonormalize(std::vector<EmbeddedVector> vectors, double rank_tol = 1e-10);

class FockSpace {
public:
  // Particle numbers 0..N; states ordered by particle number, then
  // lexicographically in the occupation vector (descending).
  FockSpace(Statistics stats, int d, int N);

  Statistics statistics() const { return stats_; }
  int modes() const { return d_; }
  int truncation() const { return N_; }
  std::size_t dim() const { return states_.size(); }
  const std::vector<int>& occupation(std::size_t i) const { return states_[i]; }
  int particles(std::size_t i) const { return count_[i]; }
  // -1 if the occupation is outside the truncated space
  std::ptrdiff_t index(const std::vector<int>& occ) const;

private:
  Statistics stats_;
  int d_, N_;
  std::vector<std::vector<int>> states_;
  std::vector<int> count_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

// sum_{k <= N} C(d, k) for fermions, sum_{k <= N} C(d + k - 1, k) for bosons.
std::size_t fock_dimension(Statistics stats, int d, int N);

enum class Ladder { create, annihilate };

// Fermions: c*_i |n> = (-1)^{n_1 + ... + n_{i-1}} |n + e_i>, zero if occupied.
// Bosons: a*_i |n> = sqrt(n_i + 1) |n + e_i>, zero beyond the truncation.
FockOperator ladder(const FockSpace& space, int index, Ladder kind);

// c*(u) = sum alpha_k c*_k and c(u) = sum conj(alpha_k) c_k for u = sum alpha_k e_k.
FockOperator creation(const FockSpace& space, const VecXc& alpha);
FockOperator annihilation(const FockSpace& space, const VecXc& alpha);
// (c*(u) + c(u)) / sqrt(2)
FockOperator field_from_coordinates(const FockSpace& space, const VecXc& alpha);

// The one-particle vector of the field: P I f for the Weyl model (blocks 0
// and 1), I f for the Maxwell F model.
EmbeddedVector one_particle_vector(const Model& m, const TestFunction& f, GridPtr grid);

FockOperator field_operator(const Model& m, const TestFunction& f, const OneParticleBasis& basis,
                            const FockSpace& space, GridPtr grid);

MatXc to_dense(const FockOperator& A);
// Largest |eigenvalue| of a self-adjoint operator.
double operator_norm(const FockOperator& A);
// max |A - A*|
double hermiticity_defect(const FockOperator& A);

struct TwoPoint {
  cplx matrix = 0; // <Omega, phi(f) phi(k) Omega> from the operators
  cplx direct = 0; // 1/2 <u_f, u_k> from the one-particle vectors
  double defect() const { return std::abs(matrix - direct); }
};
TwoPoint two_point(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k);

// max |{phi_f, phi_k} - Re<u_f, u_k> 1|.
double car_defect(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k);
// max |([phi_f, phi_k] - i Im<u_f, u_k> 1) psi| over basis vectors psi with
// at most N - 1 particles.
double ccr_defect(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k);
// Same for the ladder operators themselves: {c_i, c*_j} = delta_ij, or
// [a_i, a*_j] = delta_ij on the sector below the truncation.
double ladder_relation_defect(const FockSpace& space);

struct CovarianceElements {
  cplx lhs = 0; // <I f1, V(g) I f2>
  cplx rhs = 0; // <I f1, I(T(g) f2)>
  std::size_t skipped = 0;
  double defect() const { return std::abs(lhs - rhs); }
};
// Nodes whose preimage leaves the chart are dropped from both sides; more than
// 1% of them is an error.
CovarianceElements covariance_matrix_elements(const Model& m, const GroupElement& g, const TestFunction& f1,
                                              TestFunctionPtr f2, GridPtr grid);

// Smallest eigenvalue of E_kl = <e_k, p0 e_l> on the basis.
double spectral_positivity(const OneParticleBasis& basis);
MatXc energy_form(const OneParticleBasis& basis);

} // namespace mnl
