#include "mnl/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "mnl/errors.hpp"

namespace mnl {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule q;
  q.x.resize(n);
  q.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    double w = 2 / ((1 - z * z) * dp * dp);
    q.x[i] = mid - half * z;
    q.x[n - 1 - i] = mid + half * z;
    q.w[i] = q.w[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) q.x[n / 2] = mid;
  return q;
}

namespace {

template <typename T> T pairwise(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

} // namespace

double pairwise_sum(const double* v, std::size_t n) { return pairwise(v, n); }
std::complex<double> pairwise_sum(const std::complex<double>* v, std::size_t n) { return pairwise(v, n); }

unsigned thread_count() {
  if (const char* env = std::getenv("MNL_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return static_cast<unsigned>(t);
    } catch (...) {
    }
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  unsigned t = thread_count();
  if (t <= 1 || n < 2048) {
    body(0, n);
    return;
  }
  t = static_cast<unsigned>(std::min<std::size_t>(t, n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  std::size_t chunk = (n + t - 1) / t;
  for (unsigned k = 0; k < t; ++k) {
    std::size_t b = k * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, k, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

} // namespace mnl
