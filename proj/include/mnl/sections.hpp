#pragma once

// Closed-form sections p -> H_p of the orbit bundles over the light cone and
// the mass shell, and the Wigner elements built from them.

#include "mnl/spinor.hpp"

namespace mnl {

struct ChartGuard {
  double delta_chart = 1e-8;
};

inline constexpr double kConeTol = 1e-10;

template <typename Derived> bool on_cone(const Eigen::MatrixBase<Derived>& p, double tol = kConeTol) {
  return p(0) > 0 && std::abs(minkowski_square(p)) <= tol * p(0) * p(0);
}

template <typename Derived> bool on_shell(const Eigen::MatrixBase<Derived>& p, double m, double tol = kConeTol) {
  double s = std::max(m * m, p(0) * p(0));
  return p(0) > 0 && std::abs(minkowski_square(p) - m * m) <= tol * s;
}

// Relative distance of p from the excluded ray p3 = -p0.
template <typename Derived> typename Derived::Scalar chart_coordinate(const Eigen::MatrixBase<Derived>& p) {
  return (p(0) + p(3)) / p(0);
}

template <typename Derived> bool in_chart(const Eigen::MatrixBase<Derived>& p, ChartGuard guard = {}) {
  return p(0) > 0 && chart_coordinate(p) >= guard.delta_chart;
}

// The closed-form formula, without cone or chart checks. It is smooth on the
// open half space p0 + p3 > 0, which is what the finite-difference
// conditioning study needs.
template <typename Derived>
Spin2<typename Derived::Scalar> massless_section_formula(const Eigen::MatrixBase<Derived>& p) {
  using S = typename Derived::Scalar;
  using C = std::complex<S>;
  const S s = p(0) + p(3);
  const S r0 = std::sqrt(p(0));
  const S n = S(1) / std::sqrt(2 * p(0) * s);
  Spin2<S> H;
  H << C(-r0 * s * n, 0), C(p(1), -p(2)) * (n / r0), C(-p(1), -p(2)) * (r0 * n), C(-s / r0 * n, 0);
  return H;
}

template <typename Derived>
Spin2<typename Derived::Scalar> massless_section(const Eigen::MatrixBase<Derived>& p, ChartGuard guard = {}) {
  if (!on_cone(p)) throw NotOnCone("massless_section: momentum is not on the forward light cone");
  if (chart_coordinate(p) < guard.delta_chart)
    throw OutOfChart("massless_section: momentum too close to the ray p3 = -p0");
  return massless_section_formula(p);
}

template <typename Derived>
Spin2<typename Derived::Scalar> massive_section(const Eigen::MatrixBase<Derived>& p, double m) {
  using S = typename Derived::Scalar;
  if (!(m > 0)) throw InvalidArgument("massive_section: mass must be positive");
  if (!on_shell(p, m)) throw NotOnShell("massive_section: momentum is not on the mass shell");
  Spin2<S> H = momentum_to_matrix(p);
  H += m * Spin2<S>::Identity();
  return H / std::sqrt(2 * m * (m + p(0)));
}

// P-dagger as fixed in the two regimes: massless 1/2 (p0 - p.s), massive (p0 - p.s)/m.
template <typename Derived>
Spin2<typename Derived::Scalar> pdagger_massless(const Eigen::MatrixBase<Derived>& p) {
  return momentum_to_matrix_hat(p) / typename Derived::Scalar(2);
}

template <typename Derived>
Spin2<typename Derived::Scalar> pdagger_massive(const Eigen::MatrixBase<Derived>& p, double m) {
  return momentum_to_matrix_hat(p) / typename Derived::Scalar(m);
}

template <typename Scalar> struct WignerElement {
  Spin2<Scalar> L;
  std::complex<Scalar> phase; // L(1,1) = exp(-i theta/2)
};

// L = H_p^{-1} A H_q with q = Lambda_A^{-1} p.
template <typename Scalar, typename Derived>
WignerElement<Scalar> wigner_element(const Spin2<Scalar>& A, const Eigen::MatrixBase<Derived>& p,
                                     ChartGuard guard = {}) {
  FourVector<Scalar> pp = p;
  FourVector<Scalar> q = inverse_lorentz_action(A, pp);
  Spin2<Scalar> L = sl2_inverse(massless_section(pp, guard)) * A * massless_section(q, guard);
  return {L, L(1, 1)};
}

// exp(-i theta(A,p)/2) directly from the entries b, d of A.
template <typename Scalar, typename Derived>
std::complex<Scalar> wigner_phase_closed_form(const Spin2<Scalar>& A, const Eigen::MatrixBase<Derived>& p) {
  using C = std::complex<Scalar>;
  C w = -A(0, 1) * C(p(1), p(2)) + A(1, 1) * C(p(0) + p(3), 0);
  return w / std::abs(w);
}

template <typename Scalar, typename Derived>
Spin2<Scalar> massive_wigner_element(const Spin2<Scalar>& A, const Eigen::MatrixBase<Derived>& p, double m) {
  FourVector<Scalar> pp = p;
  FourVector<Scalar> q = inverse_lorentz_action(A, pp);
  // the inverse action can drift off the shell by rounding; project back
  q(0) = std::sqrt(q.template tail<3>().squaredNorm() + m * m);
  return sl2_inverse(massive_section(pp, m)) * A * massive_section(q, m);
}

} // namespace mnl
