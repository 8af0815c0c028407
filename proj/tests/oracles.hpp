#pragma once

// Small helpers shared by the unit tests. Nothing here calls into the
// library's higher layers; oracles are written out independently.

#include <Eigen/Dense>
#include <complex>

#include "mnl/spinor.hpp"

namespace oracle {

using mnl::cplx;

template <typename A, typename B> double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// |<u, v>_F| for Frobenius-normalized matrices: 1 means same complex line.
inline double line_overlap(const mnl::MatXc& a, const mnl::MatXc& b) {
  cplx ip = (a.adjoint() * b).trace();
  return std::abs(ip) / (a.norm() * b.norm());
}

inline mnl::MatXc nilpotent() {
  mnl::MatXc N = mnl::MatXc::Zero(2, 2);
  N(0, 1) = 1;
  return N;
}

// Gauss-Legendre nodes on [a,b] by Newton iteration on P_n.
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0);
  w.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (a + b) - 0.5 * (b - a) * z;
    w[i] = (b - a) / ((1 - z * z) * dp * dp);
  }
}

} // namespace oracle
