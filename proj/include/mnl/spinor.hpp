#pragma once

// SL(2,C) spinor algebra: momentum matrices, the covering map onto the
// Lorentz group, tensor-power representations and intertwiner spaces.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "mnl/errors.hpp"

namespace mnl {

template <typename Scalar> using Spin2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar> using FourVector = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using cplx = std::complex<double>;
using Spin2d = Spin2<double>;
using Vec4 = FourVector<double>;
using MatXc = CMatrix<double>;
using VecXc = CVector<double>;

inline constexpr double kUnimodularTol = 1e-12;

template <typename Derived>
typename Derived::Scalar minkowski_square(const Eigen::MatrixBase<Derived>& p) {
  return p(0) * p(0) - p(1) * p(1) - p(2) * p(2) - p(3) * p(3);
}

template <typename DA, typename DB>
typename DA::Scalar minkowski_dot(const Eigen::MatrixBase<DA>& p, const Eigen::MatrixBase<DB>& x) {
  return p(0) * x(0) - p(1) * x(1) - p(2) * x(2) - p(3) * x(3);
}

// P = p0 s0 + p1 s1 + p2 s2 + p3 s3
template <typename Derived>
Spin2<typename Derived::Scalar> momentum_to_matrix(const Eigen::MatrixBase<Derived>& p) {
  using S = typename Derived::Scalar;
  using C = std::complex<S>;
  Spin2<S> P;
  P << C(p(0) + p(3), 0), C(p(1), -p(2)), C(p(1), p(2)), C(p(0) - p(3), 0);
  return P;
}

// p^ = p0 s0 - p1 s1 - p2 s2 - p3 s3, the parity-reflected matrix
template <typename Derived>
Spin2<typename Derived::Scalar> momentum_to_matrix_hat(const Eigen::MatrixBase<Derived>& p) {
  using S = typename Derived::Scalar;
  using C = std::complex<S>;
  Spin2<S> P;
  P << C(p(0) - p(3), 0), C(-p(1), p(2)), C(-p(1), -p(2)), C(p(0) + p(3), 0);
  return P;
}

template <typename Scalar>
FourVector<Scalar> matrix_to_momentum(const Spin2<Scalar>& P, Scalar tol = Scalar(1e-10)) {
  Scalar scale = std::max(Scalar(1), P.cwiseAbs().maxCoeff());
  if ((P - P.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw InvalidArgument("matrix_to_momentum: input is not self-adjoint");
  // p_mu = tr(P s_mu) / 2
  FourVector<Scalar> p;
  p(0) = (P(0, 0).real() + P(1, 1).real()) / 2;
  p(1) = (P(0, 1).real() + P(1, 0).real()) / 2;
  p(2) = (P(1, 0).imag() - P(0, 1).imag()) / 2;
  p(3) = (P(0, 0).real() - P(1, 1).real()) / 2;
  return p;
}

template <typename Scalar> Spin2<Scalar> pauli(int mu) {
  using C = std::complex<Scalar>;
  Spin2<Scalar> s = Spin2<Scalar>::Zero();
  switch (mu) {
  case 0: s << C(1), C(0), C(0), C(1); break;
  case 1: s << C(0), C(1), C(1), C(0); break;
  case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
  case 3: s << C(1), C(0), C(0), C(-1); break;
  default: throw InvalidArgument("pauli: index must be 0..3");
  }
  return s;
}

template <typename Scalar> bool is_unimodular(const Spin2<Scalar>& A, Scalar tol = Scalar(kUnimodularTol)) {
  return std::abs(A.determinant() - std::complex<Scalar>(1)) <= tol;
}

// Inverse of a unimodular 2x2 matrix without division.
template <typename Scalar> Spin2<Scalar> sl2_inverse(const Spin2<Scalar>& A) {
  Spin2<Scalar> B;
  B << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
  return B;
}

template <typename Scalar, typename Derived>
FourVector<Scalar> lorentz_action(const Spin2<Scalar>& A, const Eigen::MatrixBase<Derived>& p) {
  if (!is_unimodular(A)) throw InvalidArgument("lorentz_action: det A != 1");
  Spin2<Scalar> P = A * momentum_to_matrix(p) * A.adjoint();
  // A P A* is self-adjoint up to rounding; symmetrize before reading components
  P = (P + P.adjoint()) / Scalar(2);
  return matrix_to_momentum<Scalar>(P);
}

// q = Lambda_A^{-1} p, computed as A^{-1} P (A^{-1})*.
template <typename Scalar, typename Derived>
FourVector<Scalar> inverse_lorentz_action(const Spin2<Scalar>& A, const Eigen::MatrixBase<Derived>& p) {
  if (!is_unimodular(A)) throw InvalidArgument("inverse_lorentz_action: det A != 1");
  return lorentz_action<Scalar>(sl2_inverse(A), p);
}

// 4x4 matrix of Lambda_A acting on column four-vectors.
template <typename Scalar> Eigen::Matrix<Scalar, 4, 4> lorentz_matrix(const Spin2<Scalar>& A) {
  Eigen::Matrix<Scalar, 4, 4> L;
  for (int mu = 0; mu < 4; ++mu) L.col(mu) = lorentz_action<Scalar>(A, FourVector<Scalar>::Unit(mu));
  return L;
}

template <typename Scalar> CMatrix<Scalar> kron(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b) {
  CMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Scalar> CMatrix<Scalar> kron_power(const CMatrix<Scalar>& a, int n) {
  CMatrix<Scalar> out = CMatrix<Scalar>::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

// D^(j/2,k/2): j undotted and k dotted spinor indices.
struct RepLabel {
  int j = 0;
  int k = 0;
  int dim() const { return 1 << (j + k); }
  int symmetric_dim() const { return (j + 1) * (k + 1); }
  RepLabel conjugate() const { return {k, j}; }
  bool operator==(const RepLabel&) const = default;
};

// (x)^j A (x) (x)^k conj(A) on the full 2^(j+k) tensor space. Index of
// e_{a1} (x) ... (x) e_{an} is sum a_i 2^(n-i), i.e. the first factor is most significant.
template <typename Derived>
CMatrix<typename Derived::RealScalar> rep_apply(RepLabel label, const Eigen::MatrixBase<Derived>& A) {
  using S = typename Derived::RealScalar;
  CMatrix<S> a = A;
  CMatrix<S> ab = A.conjugate();
  return kron(kron_power(a, label.j), kron_power(ab, label.k));
}

namespace detail {

// Permutation of tensor factors as a 2^n x 2^n matrix: factor i of the input
// lands in slot perm[i] of the output.
template <typename Scalar> CMatrix<Scalar> factor_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const int dim = 1 << n;
  CMatrix<Scalar> M = CMatrix<Scalar>::Zero(dim, dim);
  for (int idx = 0; idx < dim; ++idx) {
    int out = 0;
    for (int i = 0; i < n; ++i) {
      int bit = (idx >> (n - 1 - i)) & 1;
      out |= bit << (n - 1 - perm[i]);
    }
    M(out, idx) = 1;
  }
  return M;
}

} // namespace detail

// Orthoprojection onto tensors symmetric in the first j and in the last k factors.
template <typename Scalar = double> CMatrix<Scalar> symmetrizer(RepLabel label) {
  const int n = label.j + label.k;
  std::vector<int> pj(label.j), pk(label.k);
  std::iota(pj.begin(), pj.end(), 0);
  std::iota(pk.begin(), pk.end(), label.j);
  CMatrix<Scalar> S = CMatrix<Scalar>::Zero(1 << n, 1 << n);
  int count = 0;
  do {
    std::vector<int> pkk = pk;
    std::sort(pkk.begin(), pkk.end());
    do {
      std::vector<int> perm(pj);
      perm.insert(perm.end(), pkk.begin(), pkk.end());
      S += detail::factor_permutation<Scalar>(perm);
      ++count;
    } while (std::next_permutation(pkk.begin(), pkk.end()));
  } while (std::next_permutation(pj.begin(), pj.end()));
  return S / Scalar(count);
}

// Columns form an orthonormal basis of the range of the symmetrizer.
template <typename Scalar = double> CMatrix<Scalar> symmetric_isometry(RepLabel label) {
  CMatrix<Scalar> S = symmetrizer<Scalar>(label);
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(S);
  const int m = label.symmetric_dim();
  // eigenvalues ascending; the projector has m unit eigenvalues at the end
  return es.eigenvectors().rightCols(m);
}

template <typename Scalar> Spin2<Scalar> euclidean2_element(Scalar theta, std::complex<Scalar> z) {
  using C = std::complex<Scalar>;
  const C h = std::polar(Scalar(1), theta / 2);
  Spin2<Scalar> L;
  L << h, std::conj(h) * z, C(0), std::conj(h);
  return L;
}

// Generating sample of E(2): a rotation and two independent translations.
template <typename Scalar = double> std::vector<Spin2<Scalar>> e2_generators() {
  using C = std::complex<Scalar>;
  const Scalar pi = std::acos(Scalar(-1));
  return {euclidean2_element<Scalar>(pi / 3, C(0)), euclidean2_element<Scalar>(0, C(1)),
          euclidean2_element<Scalar>(0, C(0, 1))};
}

// Basis of {M : M DA(g) = DB(g) M for all sample g}, orthonormal in the
// Frobenius inner product. Singular values below rel_tol * sigma_max count as null.
template <typename Scalar>
std::vector<CMatrix<Scalar>> intertwiner_space(const std::vector<CMatrix<Scalar>>& repA,
                                               const std::vector<CMatrix<Scalar>>& repB,
                                               Scalar rel_tol = Scalar(1e-10)) {
  if (repA.empty() || repA.size() != repB.size())
    throw InvalidArgument("intertwiner_space: samples must be nonempty and paired");
  const Eigen::Index na = repA.front().rows();
  const Eigen::Index nb = repB.front().rows();
  const Eigen::Index nvar = na * nb;
  CMatrix<Scalar> IA = CMatrix<Scalar>::Identity(na, na);
  CMatrix<Scalar> IB = CMatrix<Scalar>::Identity(nb, nb);
  CMatrix<Scalar> K(nvar * static_cast<Eigen::Index>(repA.size()), nvar);
  for (std::size_t s = 0; s < repA.size(); ++s) {
    if (repA[s].rows() != na || repB[s].rows() != nb)
      throw DimensionMismatch("intertwiner_space: inconsistent sample dimensions");
    // column-major vec: vec(M DA) = (DA^T (x) I) vec M, vec(DB M) = (I (x) DB) vec M
    K.middleRows(static_cast<Eigen::Index>(s) * nvar, nvar) =
        kron<Scalar>(repA[s].transpose(), IB) - kron<Scalar>(IA, repB[s]);
  }
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Scalar smax = sv.size() ? sv(0) : Scalar(0);
  std::vector<CMatrix<Scalar>> basis;
  for (Eigen::Index c = 0; c < nvar; ++c) {
    Scalar s = c < sv.size() ? sv(c) : Scalar(0);
    if (s <= rel_tol * smax) {
      CVector<Scalar> v = svd.matrixV().col(c);
      basis.push_back(Eigen::Map<CMatrix<Scalar>>(v.data(), nb, na));
    }
  }
  return basis;
}

// Intertwiners between the symmetric (irreducible) subspaces of two tensor
// representations, lifted back to the full tensor spaces.
template <typename Scalar>
std::vector<CMatrix<Scalar>> intertwiner_space(RepLabel a, RepLabel b, const std::vector<Spin2<Scalar>>& sample,
                                               Scalar rel_tol = Scalar(1e-10)) {
  CMatrix<Scalar> Sa = symmetric_isometry<Scalar>(a);
  CMatrix<Scalar> Sb = symmetric_isometry<Scalar>(b);
  std::vector<CMatrix<Scalar>> ra, rb;
  for (const auto& g : sample) {
    ra.push_back(Sa.adjoint() * rep_apply(a, g) * Sa);
    rb.push_back(Sb.adjoint() * rep_apply(b, g) * Sb);
  }
  auto basis = intertwiner_space<Scalar>(ra, rb, rel_tol);
  for (auto& M : basis) M = (Sb * M * Sa.adjoint()).eval();
  return basis;
}

} // namespace mnl
