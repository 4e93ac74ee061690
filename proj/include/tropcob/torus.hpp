#pragma once

// Tropical affine tori (V, periods, integral tangent lattice), their duals,
// polarizations and the metric a polarization induces.
//
// Conventions:
//  * V = Q^n with standard coordinates; covectors are also stored as
//    coordinate vectors in Q^n and paired by the dot product.
//  * Lattice bases are columns.
//  * A polarization is given by the matrix C whose j-th column is the
//    covector c(gamma_j), gamma_j the j-th period generator. The extension
//    of c to V is the metric matrix G = C * L1^{-1}, so g(u, v) = u^T G v.

#include <cstddef>
#include <utility>
#include <vector>

#include "tropcob/lattice.hpp"

namespace tropcob {

class TropicalAffineTorus {
 public:
  TropicalAffineTorus() = default;
  TropicalAffineTorus(IntLattice periods, IntLattice tangent)
      : periods_(std::move(periods)), tangent_(std::move(tangent)), covectors_(dual_lattice(tangent_)) {
    if (periods_.dim() != tangent_.dim()) throw Error(ErrorKind::DimensionMismatch, "lattice dimensions differ");
  }

  std::size_t dim() const noexcept { return periods_.dim(); }
  /// Lambda_1: acts on V by translation.
  const IntLattice& periods() const noexcept { return periods_; }
  /// Lambda_2: integral tangent vectors.
  const IntLattice& tangent_lattice() const noexcept { return tangent_; }
  /// Lambda_2 dual: integral covectors (slopes of integral affine functions).
  const IntLattice& covector_lattice() const noexcept { return covectors_; }

  /// Representative of v + Lambda_1 in the half-open parallelepiped spanned by the period basis.
  QVector reduce(const QVector& v) const {
    QVector t = periods_.coordinates(v);
    for (auto& x : t) x -= Rational(floor_of(x));
    return periods_.basis() * t;
  }

  /// Period-basis coordinates, floored: the lattice shift that reduce() removes.
  std::vector<Integer> fundamental_shift(const QVector& v) const {
    std::vector<Integer> s;
    for (const auto& x : periods_.coordinates(v)) s.push_back(floor_of(x));
    return s;
  }

  QVector period(const std::vector<Integer>& coords) const {
    QVector v(dim(), Rational(0));
    for (std::size_t j = 0; j < coords.size(); ++j) v = v + Rational(coords[j]) * periods_.generator(j);
    return v;
  }

  bool same_point(const QVector& a, const QVector& b) const { return periods_.contains(a - b); }

  bool operator==(const TropicalAffineTorus& o) const {
    return periods_ == o.periods_ && tangent_ == o.tangent_;
  }

 private:
  IntLattice periods_;
  IntLattice tangent_;
  IntLattice covectors_;
};

inline TropicalAffineTorus make_torus(const QMatrix& lambda1_basis, const QMatrix& lambda2_basis) {
  if (lambda1_basis.rows() != lambda2_basis.rows() || !lambda1_basis.square() || !lambda2_basis.square()) {
    throw Error(ErrorKind::DimensionMismatch, "torus lattices must be square of equal size");
  }
  return TropicalAffineTorus(IntLattice(lambda1_basis), IntLattice(lambda2_basis));
}

/// (V^vee, Lambda_2^vee, Lambda_1^vee) under V^vee^vee = V.
inline TropicalAffineTorus dual_torus(const TropicalAffineTorus& b) {
  return TropicalAffineTorus(dual_lattice(b.tangent_lattice()), dual_lattice(b.periods()));
}

struct Metric {
  QMatrix G;      ///< g(u, v) = u^T G v on V
  QMatrix G_inv;  ///< induced pairing on covectors

  Rational pairing(const QVector& u, const QVector& v) const { return dot(u, G * v); }
  Rational norm_sq(const QVector& w) const { return pairing(w, w); }
  /// Vector dual to a covector: g(sharp(alpha), v) = alpha(v).
  QVector sharp(const QVector& alpha) const { return G_inv * alpha; }
  QVector flat(const QVector& v) const { return G * v; }
  /// |alpha^#|^2
  Rational covector_norm_sq(const QVector& alpha) const { return dot(alpha, G_inv * alpha); }
};

inline QVector sharp(const Metric& m, const QVector& alpha) { return m.sharp(alpha); }
inline Rational norm_sq(const Metric& m, const QVector& w) { return m.norm_sq(w); }

inline Metric make_metric(const QMatrix& g) {
  if (!positive_definite(g)) throw Error(ErrorKind::NotPositiveDefinite, "metric is not positive definite");
  return Metric{g, g.inverse()};
}

struct Polarization {
  TropicalAffineTorus torus;
  QMatrix c;          ///< column j = covector c(gamma_j)
  ZMatrix in_bases;   ///< c as an integer matrix Lambda_1 -> Lambda_2^vee in the stored bases
  QMatrix gram;       ///< <gamma_i, gamma_j> = c(gamma_j)(gamma_i)
  Metric metric;

  std::size_t dim() const noexcept { return torus.dim(); }
  /// Extension of c to V.
  QVector apply(const QVector& v) const { return metric.flat(v); }
};

/// Checks integrality, symmetry and positivity of c, and derives the metric.
inline std::pair<Polarization, Metric> validate_polarization(const TropicalAffineTorus& b, const QMatrix& c) {
  const std::size_t n = b.dim();
  if (c.rows() != n || c.cols() != n) throw Error(ErrorKind::DimensionMismatch, "polarization matrix has wrong size");
  const QMatrix& l1 = b.periods().basis();
  // coordinates of each c(gamma_j) in the Lambda_2^vee basis are its values on the Lambda_2 basis
  const QMatrix coords = b.tangent_lattice().basis().transpose() * c;
  if (!coords.is_integer()) throw Error(ErrorKind::NotIntegral, "c(gamma) is not an integral covector");
  const QMatrix gram = l1.transpose() * c;
  if (!gram.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "polarization pairing is not symmetric");
  if (!positive_definite(gram)) throw Error(ErrorKind::NotPositiveDefinite, "polarization pairing is not positive definite");
  const QMatrix g = c * b.periods().inverse_basis();
  Metric m{g, g.inverse()};
  Polarization p{b, c, ZMatrix::from_rational(coords), gram, m};
  return {p, m};
}

/// Largest invariant factor of Lambda_2^vee / c(Lambda_1).
inline Integer polarization_exponent(const Polarization& p) {
  const auto d = smith_normal_form(p.in_bases).diagonal();
  return d.empty() ? Integer(1) : d.back();
}

/// Polarization on the dual torus with metric e * G^{-1}, e the exponent of coker c.
inline Polarization dual_polarization(const Polarization& p) {
  const TropicalAffineTorus dual = dual_torus(p.torus);
  const QMatrix g_dual = Rational(polarization_exponent(p)) * p.metric.G_inv;
  const QMatrix c_dual = g_dual * dual.periods().basis();
  return validate_polarization(dual, c_dual).first;
}

/// Cosets of k c(Lambda_1) in Lambda_2^vee.
class CosetSystem {
 public:
  CosetSystem() = default;
  CosetSystem(const Polarization& p, long k) : k_(k) {
    if (k < 1) throw Error(ErrorKind::DimensionMismatch, "k must be positive");
    const std::size_t n = p.dim();
    dual_basis_ = p.torus.covector_lattice().basis();
    ZMatrix m = p.in_bases;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) *= k;
    hnf_ = hermite_normal_form(m).H;
    order_ = cokernel_order(m);
    // mixed-radix enumeration of the box prod [0, H_ii)
    std::vector<Integer> x(n, Integer(0));
    const std::size_t count = order_.get_ui();
    for (std::size_t idx = 0; idx < count; ++idx) {
      QVector cov(n, Rational(0));
      for (std::size_t j = 0; j < n; ++j) cov = cov + Rational(x[j]) * dual_basis_.col(j);
      representatives_.push_back(cov);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += 1;
        if (x[i] < hnf_(i, i)) break;
        x[i] = 0;
      }
    }
  }

  long k() const noexcept { return k_; }
  std::size_t size() const noexcept { return representatives_.size(); }
  const Integer& order() const noexcept { return order_; }
  const std::vector<QVector>& representatives() const noexcept { return representatives_; }

  /// Index of the coset containing the integral covector alpha.
  std::size_t index_of(const QVector& alpha) const {
    const std::size_t n = alpha.size();
    QVector xq = dual_basis_.inverse() * alpha;
    std::vector<Integer> x;
    for (const auto& v : xq) {
      if (!is_integer(v)) throw Error(ErrorKind::NotIntegral, "covector is not integral");
      x.push_back(v.get_num());
    }
    for (std::size_t i = 0; i < n; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), x[i].get_mpz_t(), hnf_(i, i).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = i; r < n; ++r) x[r] -= q * hnf_(r, i);
    }
    std::size_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < n; ++i) {
      idx += x[i].get_ui() * radix;
      radix *= hnf_(i, i).get_ui();
    }
    return idx;
  }

  bool congruent(const QVector& a, const QVector& b) const { return index_of(a) == index_of(b); }

 private:
  long k_ = 1;
  QMatrix dual_basis_;
  ZMatrix hnf_;
  Integer order_ = 1;
  std::vector<QVector> representatives_;
};

inline CosetSystem coset_system(const Polarization& p, long k) { return CosetSystem(p, k); }

}  // namespace tropcob
