#pragma once

// Quadrature on the forward light cone (or a mass shell) for the invariant
// measure d^3p / (2 p0), fibre-valued functions sampled on the nodes, and the
// weighted inner products used for the one-particle spaces.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mnl/numerics.hpp"
#include "mnl/sections.hpp"

namespace mnl {

enum class ShellKind { cone, shell };

struct GridSpec {
  ShellKind kind = ShellKind::cone;
  double mass = 0;
  int n_r = 48;
  int n_theta = 32;
  int n_phi = 64;
  double r_max = 20;
  std::uint64_t seed = 7;

  GridSpec doubled() const {
    GridSpec g = *this;
    g.n_r *= 2;
    g.n_theta *= 2;
    g.n_phi *= 2;
    return g;
  }
  std::string str() const; // "48x32x64/20"
};

struct ConeGrid {
  GridSpec spec;
  std::vector<Vec4> nodes;
  std::vector<double> weights;
  Eigen::Matrix3d axis_rotation = Eigen::Matrix3d::Identity();

  std::size_t size() const { return nodes.size(); }
};

using GridPtr = std::shared_ptr<const ConeGrid>;

GridPtr build_grid(const GridSpec& spec, ChartGuard guard = {});

struct SelfTest {
  double quadrature = 0; // sum w e^{-p0}
  double truncated_exact = 0; // 2 pi (1 - (1 + r_max) e^{-r_max})
  double relative_error = 0; // |quadrature - truncated_exact| / truncated_exact
  double tail = 0; // 2 pi - truncated_exact, the part beyond r_max
};

// Integral of e^{-p0} against the cone measure (cone grids only).
SelfTest grid_self_test(const ConeGrid& grid);

// A fibre-valued function on the nodes; column i holds the value at node i.
class ConeFunction {
public:
  ConeFunction() = default;
  ConeFunction(GridPtr grid, int dim);
  ConeFunction(GridPtr grid, MatXc values);

  template <typename F> static ConeFunction sample(GridPtr grid, int dim, F&& f) {
    ConeFunction out(grid, dim);
    parallel_for(grid->size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) out.values_.col(static_cast<Eigen::Index>(i)) = f(grid->nodes[i]);
    });
    return out;
  }

  const GridPtr& grid() const { return grid_; }
  int dim() const { return static_cast<int>(values_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(values_.cols()); }
  const MatXc& values() const { return values_; }
  MatXc& values() { return values_; }
  auto at(std::size_t i) const { return values_.col(static_cast<Eigen::Index>(i)); }
  auto at(std::size_t i) { return values_.col(static_cast<Eigen::Index>(i)); }

  ConeFunction& operator+=(const ConeFunction& o);
  ConeFunction& operator-=(const ConeFunction& o);
  ConeFunction& operator*=(cplx s);
  friend ConeFunction operator+(ConeFunction a, const ConeFunction& b) { return a += b; }
  friend ConeFunction operator-(ConeFunction a, const ConeFunction& b) { return a -= b; }
  friend ConeFunction operator*(cplx s, ConeFunction a) { return a *= s; }

  // Stack fibres: the result has dimension a.dim() + b.dim().
  static ConeFunction concat(const std::vector<const ConeFunction*>& parts);
  ConeFunction block(int offset, int dim) const;

private:
  GridPtr grid_;
  MatXc values_;
};

enum class InnerProductKind {
  l2,            // identity
  beta_plus,     // D(H_p^{-1})* D(H_p^{-1}) on (x)^n C^2
  beta_minus,    // complex conjugate of beta_plus
  weyl_net,      // beta_plus, beta_minus, beta_plus, beta_minus on four C^2 blocks
  f_net,         // beta_plus, beta_minus on two (x)^n C^2 blocks
  eta_pm,        // spinorial metric on C^2 (x) C^2
  beta_pullback, // D(conj(H_p^{-1}))* D(diag(0,1)) D(conj(H_p^{-1})) = (x)^n conj(P-dagger), rank one
};

std::string to_string(InnerProductKind k);

// Weight matrix of a kind at p for total fibre dimension dim.
MatXc weight_matrix(InnerProductKind kind, const Vec4& p, int dim, ChartGuard guard = {});

// sum_i w_i <f(p_i), B(p_i) g(p_i)>, antilinear in f.
cplx inner_product(InnerProductKind kind, const ConeFunction& f, const ConeFunction& g);

// Same, with an extra scalar factor s(p_i) at each node.
cplx inner_product_weighted(InnerProductKind kind, const ConeFunction& f, const ConeFunction& g,
                            const std::function<double(const Vec4&)>& s);

inline double norm(InnerProductKind kind, const ConeFunction& f) {
  return std::sqrt(std::max(0.0, inner_product(kind, f, f).real()));
}

// Columnar text dump: header "# mnl-cone v1 d=<dim>", then one line per node
// "p0 p1 p2 p3 w Re(v_1) Im(v_1) ... Re(v_d) Im(v_d)".
void write_cone_function(std::ostream& os, const ConeFunction& f);
// Reads a dump back; the grid is rebuilt from the stored nodes and weights.
ConeFunction read_cone_function(std::istream& is);

} // namespace mnl
