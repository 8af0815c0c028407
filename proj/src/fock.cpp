#include "mnl/fock.hpp"

#include <Eigen/Eigenvalues>

#include <atomic>
#include <functional>
#include <iomanip>
#include <sstream>

namespace mnl {

namespace {

double max_abs(const MatXc& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

double OneParticleBasis::gram_defect() const {
  // sources[j] = sum_k B(k, j) e_k with B = C* G
  MatXc B = coeffs.adjoint() * gram;
  return max_abs(B.adjoint() * B - gram) / max_abs(gram);
}

VecXc OneParticleBasis::coordinates(const EmbeddedVector& u, double tol) const {
  const std::size_t m = sources.size();
  VecXc s(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) s(static_cast<Eigen::Index>(j)) = model_inner_product(sources[j], u);
  VecXc alpha = coeffs.adjoint() * s;
  // the residual is formed explicitly; |u|^2 - |alpha|^2 would lose half the digits
  VecXc c = coeffs * alpha;
  EmbeddedVector r = u;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t q = 0; q < r.blocks.size(); ++q)
      r.blocks[q] -= c(static_cast<Eigen::Index>(j)) * sources[j].blocks[q];
  double res = model_norm(r), nu = model_norm(u);
  double ref = std::sqrt(gram.diagonal().real().maxCoeff());
  if (res > tol * nu + 1e-12 * ref) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << "coordinates: vector is not in the span of the basis (residual "
       << res << ", norm " << nu << ")";
    throw InvalidArgument(os.str());
  }
  return alpha;
}

OneParticleBasis orthonormalize(std::vector<EmbeddedVector> vectors, double rank_tol) {
  if (vectors.empty()) throw InvalidArgument("orthonormalize: no vectors");
  const int m = static_cast<int>(vectors.size());
  OneParticleBasis b;
  b.rank_tol = rank_tol;
  b.gram.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      b.gram(i, j) = model_inner_product(vectors[i], vectors[j]);
      b.gram(j, i) = std::conj(b.gram(i, j));
    }
  double ref = std::sqrt(b.gram.diagonal().real().maxCoeff());
  if (!(ref > 0)) throw InvalidArgument("orthonormalize: all vectors vanish");
  auto ip = [&](const VecXc& x, const VecXc& y) { return (x.adjoint() * b.gram * y)(0); };
  std::vector<VecXc> basis;
  for (int j = 0; j < m; ++j) {
    VecXc w = VecXc::Unit(m, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : basis) w -= ip(e, w) * e;
    double nrm = std::sqrt(std::max(0.0, ip(w, w).real()));
    if (nrm <= rank_tol * ref) continue;
    basis.push_back(w / nrm);
  }
  b.coeffs.resize(m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) b.coeffs.col(static_cast<Eigen::Index>(k)) = basis[k];
  b.sources = std::move(vectors);
  return b;
}

std::size_t fock_dimension(Statistics stats, int d, int N) {
  auto binom = [](long n, long k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1;
    for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
  };
  double s = 0;
  for (int k = 0; k <= N; ++k) s += stats == Statistics::fermi ? binom(d, k) : binom(d + k - 1, k);
  return static_cast<std::size_t>(s);
}

FockSpace::FockSpace(Statistics stats, int d, int N) : stats_(stats), d_(d), N_(N) {
  if (d < 1 || N < 0) throw InvalidArgument("FockSpace: need d >= 1 and N >= 0");
  if (fock_dimension(stats, d, N) > 200000) throw InvalidArgument("FockSpace: truncated space too large");
  const int cap = stats == Statistics::fermi ? 1 : N;
  for (int n = 0; n <= N; ++n) {
    // occupations with total n, each entry <= cap, in descending lexicographic order
    std::vector<int> occ(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == d - 1) {
        if (left <= cap) {
          occ[pos] = left;
          states_.push_back(occ);
          count_.push_back(n);
        }
        return;
      }
      for (int k = std::min(left, cap); k >= 0; --k) {
        occ[pos] = k;
        rec(pos + 1, left - k);
      }
      occ[pos] = 0;
    };
    rec(0, n);
  }
  for (std::size_t i = 0; i < states_.size(); ++i) lookup_[states_[i]] = i;
}

std::ptrdiff_t FockSpace::index(const std::vector<int>& occ) const {
  auto it = lookup_.find(occ);
  return it == lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

namespace {

using Triplet = Eigen::Triplet<cplx>;

// Appends coef * (creation of mode i) applied to basis state col.
void add_create(const FockSpace& s, std::size_t col, int i, cplx coef, std::vector<Triplet>& out) {
  std::vector<int> occ = s.occupation(col);
  double amp;
  if (s.statistics() == Statistics::fermi) {
    if (occ[i]) return;
    int before = 0;
    for (int k = 0; k < i; ++k) before += occ[k];
    amp = before % 2 ? -1.0 : 1.0;
  } else {
    amp = std::sqrt(occ[i] + 1.0);
  }
  occ[i] += 1;
  std::ptrdiff_t row = s.index(occ);
  if (row < 0) return;
  out.emplace_back(static_cast<int>(row), static_cast<int>(col), coef * amp);
}

void add_annihilate(const FockSpace& s, std::size_t col, int i, cplx coef, std::vector<Triplet>& out) {
  std::vector<int> occ = s.occupation(col);
  if (occ[i] == 0) return;
  double amp;
  if (s.statistics() == Statistics::fermi) {
    int before = 0;
    for (int k = 0; k < i; ++k) before += occ[k];
    amp = before % 2 ? -1.0 : 1.0;
  } else {
    amp = std::sqrt(static_cast<double>(occ[i]));
  }
  occ[i] -= 1;
  std::ptrdiff_t row = s.index(occ);
  out.emplace_back(static_cast<int>(row), static_cast<int>(col), coef * amp);
}

FockOperator assemble(const FockSpace& s, const std::vector<Triplet>& t) {
  FockOperator A(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
  A.setFromTriplets(t.begin(), t.end());
  A.makeCompressed();
  return A;
}

void check_alpha(const FockSpace& s, const VecXc& alpha) {
  if (alpha.size() != s.modes())
    throw DimensionMismatch("Fock operator: " + std::to_string(alpha.size()) + " coordinates for " +
                            std::to_string(s.modes()) + " modes");
}

FockOperator identity(const FockSpace& s) {
  FockOperator I(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
  I.setIdentity();
  return I;
}

} // namespace

FockOperator ladder(const FockSpace& space, int index, Ladder kind) {
  if (index < 0 || index >= space.modes()) throw InvalidArgument("ladder: mode index out of range");
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < space.dim(); ++c) {
    if (kind == Ladder::create)
      add_create(space, c, index, 1.0, t);
    else
      add_annihilate(space, c, index, 1.0, t);
  }
  return assemble(space, t);
}

FockOperator creation(const FockSpace& space, const VecXc& alpha) {
  check_alpha(space, alpha);
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < space.dim(); ++c)
    for (int k = 0; k < space.modes(); ++k)
      if (alpha(k) != 0.0) add_create(space, c, k, alpha(k), t);
  return assemble(space, t);
}

FockOperator annihilation(const FockSpace& space, const VecXc& alpha) {
  check_alpha(space, alpha);
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < space.dim(); ++c)
    for (int k = 0; k < space.modes(); ++k)
      if (alpha(k) != 0.0) add_annihilate(space, c, k, std::conj(alpha(k)), t);
  return assemble(space, t);
}

FockOperator field_from_coordinates(const FockSpace& space, const VecXc& alpha) {
  check_alpha(space, alpha);
  std::vector<Triplet> t;
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t c = 0; c < space.dim(); ++c)
    for (int k = 0; k < space.modes(); ++k) {
      if (alpha(k) == 0.0) continue;
      add_create(space, c, k, r * alpha(k), t);
      add_annihilate(space, c, k, r * std::conj(alpha(k)), t);
    }
  return assemble(space, t);
}

EmbeddedVector one_particle_vector(const Model& m, const TestFunction& f, GridPtr grid) {
  EmbeddedVector v = embed(m, f, grid);
  if (m.kind == ModelKind::weyl) return basis_projection(v);
  if (m.kind == ModelKind::maxwell_F) return v;
  throw InvalidArgument("one_particle_vector: fields exist for the Weyl and Maxwell F models only");
}

FockOperator field_operator(const Model& m, const TestFunction& f, const OneParticleBasis& basis,
                            const FockSpace& space, GridPtr grid) {
  if ((space.statistics() == Statistics::fermi) != m.fermionic())
    throw InvalidArgument("field_operator: statistics do not match the model");
  if (space.modes() != basis.dim()) throw DimensionMismatch("field_operator: Fock space and basis differ in size");
  return field_from_coordinates(space, basis.coordinates(one_particle_vector(m, f, grid)));
}

MatXc to_dense(const FockOperator& A) { return MatXc(A); }

double operator_norm(const FockOperator& A) {
  Eigen::SelfAdjointEigenSolver<MatXc> es(to_dense(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double hermiticity_defect(const FockOperator& A) {
  FockOperator D = A - FockOperator(A.adjoint());
  double m = 0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (FockOperator::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

TwoPoint two_point(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k) {
  FockOperator pf = field_from_coordinates(space, alpha_f), pk = field_from_coordinates(space, alpha_k);
  VecXc omega = VecXc::Unit(static_cast<Eigen::Index>(space.dim()), 0);
  TwoPoint r;
  r.matrix = omega.dot(pf * (pk * omega));
  r.direct = 0.5 * alpha_f.dot(alpha_k);
  return r;
}

namespace {

double sparse_max(const FockOperator& D) {
  double m = 0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (FockOperator::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

// max over columns with at most N - 1 particles
double sector_max(const FockSpace& s, const FockOperator& D) {
  double m = 0;
  for (int k = 0; k < D.outerSize(); ++k) {
    if (s.particles(static_cast<std::size_t>(k)) >= s.truncation()) continue;
    for (FockOperator::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

} // namespace

double car_defect(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k) {
  if (space.statistics() != Statistics::fermi) throw InvalidArgument("car_defect: fermionic space expected");
  FockOperator pf = field_from_coordinates(space, alpha_f), pk = field_from_coordinates(space, alpha_k);
  FockOperator D = FockOperator(pf * pk) + FockOperator(pk * pf) - alpha_f.dot(alpha_k).real() * identity(space);
  return sparse_max(D);
}

double ccr_defect(const FockSpace& space, const VecXc& alpha_f, const VecXc& alpha_k) {
  if (space.statistics() != Statistics::bose) throw InvalidArgument("ccr_defect: bosonic space expected");
  FockOperator pf = field_from_coordinates(space, alpha_f), pk = field_from_coordinates(space, alpha_k);
  FockOperator D =
      FockOperator(pf * pk) - FockOperator(pk * pf) - cplx(0, alpha_f.dot(alpha_k).imag()) * identity(space);
  return sector_max(space, D);
}

double ladder_relation_defect(const FockSpace& space) {
  const int d = space.modes();
  std::vector<FockOperator> a, ad;
  for (int i = 0; i < d; ++i) {
    a.push_back(ladder(space, i, Ladder::annihilate));
    ad.push_back(ladder(space, i, Ladder::create));
  }
  const bool fermi = space.statistics() == Statistics::fermi;
  double worst = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      FockOperator D = fermi ? FockOperator(FockOperator(a[i] * ad[j]) + FockOperator(ad[j] * a[i]))
                             : FockOperator(FockOperator(a[i] * ad[j]) - FockOperator(ad[j] * a[i]));
      if (i == j) D -= identity(space);
      worst = std::max(worst, fermi ? sparse_max(D) : sector_max(space, D));
      if (fermi) {
        // {c_i, c_j} = 0 as well
        worst = std::max(worst, sparse_max(FockOperator(FockOperator(a[i] * a[j]) + FockOperator(a[j] * a[i]))));
      }
    }
  return worst;
}

CovarianceElements covariance_matrix_elements(const Model& m, const GroupElement& g, const TestFunction& f1,
                                              TestFunctionPtr f2, GridPtr grid) {
  EmbeddedVector u = embed(m, f1, grid);
  TransformedTestFunction tf(f2, g, m.test_label());
  EmbeddedVector direct = embed(m, tf, grid);
  EmbeddedVector moved = direct;
  std::atomic<std::size_t> skipped{0};
  parallel_for(grid->size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        auto vals = v_apply_at(m, g, *f2, grid->nodes[i]);
        for (std::size_t b = 0; b < vals.size(); ++b) moved.blocks[b].at(i) = vals[b];
      } catch (const OutOfChart&) {
        ++skipped;
        for (std::size_t b = 0; b < moved.blocks.size(); ++b) {
          moved.blocks[b].at(i).setZero();
          direct.blocks[b].at(i).setZero();
        }
      }
    }
  });
  CovarianceElements r;
  r.skipped = skipped;
  if (r.skipped * 100 > grid->size())
    throw OutOfChart("covariance_matrix_elements: more than 1% of the nodes left the chart");
  r.lhs = model_inner_product(u, moved);
  r.rhs = model_inner_product(u, direct);
  return r;
}

MatXc energy_form(const OneParticleBasis& basis) {
  if (basis.dim() == 0) throw InvalidArgument("energy_form: empty basis");
  const int m = static_cast<int>(basis.sources.size());
  auto p0 = [](const Vec4& p) { return p(0); };
  MatXc W(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const EmbeddedVector &a = basis.sources[i], &b = basis.sources[j];
      cplx s = 0;
      for (std::size_t k = 0; k < a.blocks.size(); ++k)
        s += inner_product_weighted(block_kind(a.model, static_cast<int>(k)), a.blocks[k], b.blocks[k], p0);
      W(i, j) = s;
      W(j, i) = std::conj(s);
    }
  return basis.coeffs.adjoint() * W * basis.coeffs;
}

double spectral_positivity(const OneParticleBasis& basis) {
  MatXc E = energy_form(basis);
  Eigen::SelfAdjointEigenSolver<MatXc> es(E, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

} // namespace mnl
