#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace mnl {

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1, double b = 1);

// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(const double* v, std::size_t n);
std::complex<double> pairwise_sum(const std::complex<double>* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }
inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Worker count: MNL_THREADS if set, otherwise the hardware concurrency.
unsigned thread_count();

// Runs body(begin, end) over a static partition of [0, n). Partitioning only
// affects which thread computes an index, never the value, so callers that
// write into per-index slots stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace mnl
