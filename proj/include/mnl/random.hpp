#pragma once

// Counter-based random numbers. A stream is (seed, stream id); the n-th draw
// is a pure function of (seed, stream, n), so results do not depend on the
// order in which checks or threads consume them.

#include <cmath>
#include <cstdint>

#include "mnl/sections.hpp"

namespace mnl {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_id(const char* name) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* c = name; *c; ++c) h = (h ^ static_cast<unsigned char>(*c)) * 0x100000001b3ULL;
  return h;
}

class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}
  Rng(std::uint64_t seed, const char* stream) : Rng(seed, stream_id(stream)) {}

  std::uint64_t next_u64() { return splitmix64(key_ ^ splitmix64(counter_++)); }

  // uniform on [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  cplx complex_normal() { return {normal(), normal()}; }

  Eigen::Vector3d unit_vector() {
    Eigen::Vector3d v(normal(), normal(), normal());
    return v / v.norm();
  }

  // Haar-distributed element of SU(2)
  Spin2d su2() {
    Eigen::Vector4d q(normal(), normal(), normal(), normal());
    q /= q.norm();
    Spin2d U;
    U << cplx(q(0), q(1)), cplx(q(2), q(3)), cplx(-q(2), q(3)), cplx(q(0), -q(1));
    return U;
  }

  // U diag(e^{s/2}, e^{-s/2}) V with |s| <= max_rapidity
  Spin2d sl2c(double max_rapidity) {
    double s = uniform(-max_rapidity, max_rapidity);
    Spin2d D = Spin2d::Zero();
    D(0, 0) = std::exp(s / 2);
    D(1, 1) = std::exp(-s / 2);
    return su2() * D * su2();
  }

  Spin2d e2() { return euclidean2_element(uniform(0, 4 * M_PI), cplx(normal(), normal())); }

  Vec4 light_like(double r_min, double r_max) {
    double r = uniform(r_min, r_max);
    Eigen::Vector3d n = unit_vector();
    return Vec4(r, r * n(0), r * n(1), r * n(2));
  }

  // on the cone and inside the chart with margin
  Vec4 chart_point(double r_min, double r_max, double margin = 1e-3) {
    for (;;) {
      Vec4 p = light_like(r_min, r_max);
      if (chart_coordinate(p) >= margin) return p;
    }
  }

  Vec4 on_shell(double m, double pmax) {
    Eigen::Vector3d n = unit_vector();
    double r = uniform(0, pmax);
    return Vec4(std::sqrt(r * r + m * m), r * n(0), r * n(1), r * n(2));
  }

  Vec4 vec4(double scale) { return Vec4(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)); }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Poincare group element (A, a) acting by x -> Lambda_A x + a.
struct GroupElement {
  Spin2d A = Spin2d::Identity();
  Vec4 a = Vec4::Zero();
};

inline GroupElement random_group_element(Rng& rng, double max_rapidity, double max_translation) {
  return {rng.sl2c(max_rapidity), rng.vec4(max_translation)};
}

} // namespace mnl
