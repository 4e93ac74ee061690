#pragma once

// Integer matrices, Hermite and Smith normal forms, and full-rank lattices
// in Q^n given by a column basis.

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "tropcob/rational.hpp"

namespace tropcob {

class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  ZMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static ZMatrix identity(std::size_t n) {
    ZMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Throws NotIntegral when some entry is not an integer.
  static ZMatrix from_rational(const QMatrix& q) {
    ZMatrix m(q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
      for (std::size_t j = 0; j < q.cols(); ++j) {
        if (q(i, j).get_den() != 1) throw Error(ErrorKind::NotIntegral, "matrix entry " + to_string(q(i, j)));
        m(i, j) = q(i, j).get_num();
      }
    return m;
  }

  QMatrix to_rational() const {
    QMatrix q(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) q(i, j) = Rational((*this)(i, j));
    return q;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ZMatrix operator*(const ZMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "integer matrix product");
    ZMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    return r;
  }

  bool operator==(const ZMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Integer determinant() const {
    const Rational d = to_rational().determinant();
    return d.get_num();
  }

  // Elementary operations; used by the normal-form routines.
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  /// (col a, col b) <- (s a + t b, u a + v b)
  void combine_cols(std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                    const Integer& v) {
    for (std::size_t i = 0; i < rows_; ++i) {
      const Integer x = (*this)(i, a), y = (*this)(i, b);
      (*this)(i, a) = s * x + t * y;
      (*this)(i, b) = u * x + v * y;
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline bool is_unimodular(const ZMatrix& u) {
  if (u.rows() != u.cols()) return false;
  return abs(u.determinant()) == 1;
}

struct HermiteResult {
  ZMatrix H;  ///< column-style HNF, H = M * U
  ZMatrix U;  ///< unimodular
};

/// Column Hermite normal form. Pivots are positive; entries to the left of a
/// pivot are reduced into [0, pivot); columns right of the last pivot are zero.
inline HermiteResult hermite_normal_form(const ZMatrix& m) {
  ZMatrix h = m;
  ZMatrix u = ZMatrix::identity(m.cols());
  std::size_t pc = 0;
  for (std::size_t i = 0; i < h.rows() && pc < h.cols(); ++i) {
    for (std::size_t j = pc + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, pc) == 0) {
        h.swap_cols(pc, j);
        u.swap_cols(pc, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(i, pc).get_mpz_t(), h(i, j).get_mpz_t());
      const Integer x = h(i, pc) / g, y = h(i, j) / g;
      h.combine_cols(pc, j, s, t, -y, x);
      u.combine_cols(pc, j, s, t, -y, x);
    }
    if (h(i, pc) == 0) continue;
    if (h(i, pc) < 0) {
      h.negate_col(pc);
      u.negate_col(pc);
    }
    for (std::size_t j = 0; j < pc; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, pc).get_mpz_t());
      if (q == 0) continue;
      h.add_col(j, pc, -q);
      u.add_col(j, pc, -q);
    }
    ++pc;
  }
  return {std::move(h), std::move(u)};
}

struct SmithResult {
  ZMatrix S;  ///< diagonal, S = U * M * V, d_i | d_{i+1}
  ZMatrix U;
  ZMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

inline SmithResult smith_normal_form(const ZMatrix& m) {
  ZMatrix s = m;
  ZMatrix u = ZMatrix::identity(m.rows());
  ZMatrix v = ZMatrix::identity(m.cols());
  const std::size_t r = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < r; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block
      std::size_t pi = s.rows(), pj = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (pi == s.rows() || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == s.rows()) return {std::move(s), std::move(u), std::move(v)};
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (!divides) continue;
      if (s(t, t) < 0) {
        s.negate_row(t);
        u.negate_row(t);
      }
      break;
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

/// Order of the cokernel Z^n / M Z^n of a square integer matrix; 0 when infinite.
inline Integer cokernel_order(const ZMatrix& m) {
  const auto d = smith_normal_form(m).diagonal();
  Integer prod = 1;
  for (const auto& x : d) prod *= x;
  if (m.rows() != m.cols()) return 0;
  return prod;
}

inline Integer gcd_of(const std::vector<Integer>& xs) {
  Integer g = 0;
  for (const auto& x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

/// Primitive integer vector on the ray through a nonzero rational vector.
inline std::vector<Integer> primitive_direction(const QVector& v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> z;
  for (const auto& x : v) z.push_back(Integer(x * den));
  const Integer g = gcd_of(z);
  if (g == 0) throw Error(ErrorKind::Singular, "zero vector has no primitive direction");
  for (auto& x : z) x /= g;
  return z;
}

/// Basis (columns) of the integer kernel {z in Z^n : A z = 0} of a rational matrix.
inline std::vector<std::vector<Integer>> integer_kernel(const QMatrix& a) {
  const Integer den = a.common_denominator();
  const ZMatrix m = ZMatrix::from_rational(Rational(den) * a);
  const auto hr = hermite_normal_form(m);
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = 0; j < hr.H.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < hr.H.rows(); ++i)
      if (hr.H(i, j) != 0) zero = false;
    if (!zero) continue;
    std::vector<Integer> col;
    for (std::size_t i = 0; i < hr.U.rows(); ++i) col.push_back(hr.U(i, j));
    basis.push_back(std::move(col));
  }
  return basis;
}

/// Full-rank lattice in Q^n with a column basis.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(QMatrix basis) : basis_(std::move(basis)) {
    if (!basis_.square()) throw Error(ErrorKind::DimensionMismatch, "lattice basis must be square");
    if (basis_.rows() == 0 || basis_.determinant() == 0) throw Error(ErrorKind::RankDeficient, "lattice basis is singular");
    inverse_ = basis_.inverse();
  }

  std::size_t dim() const noexcept { return basis_.rows(); }
  const QMatrix& basis() const noexcept { return basis_; }
  const QMatrix& inverse_basis() const noexcept { return inverse_; }
  QVector generator(std::size_t j) const { return basis_.col(j); }

  /// Coordinates of v in the lattice basis.
  QVector coordinates(const QVector& v) const { return inverse_ * v; }

  bool contains(const QVector& v) const {
    for (const auto& x : coordinates(v))
      if (!is_integer(x)) return false;
    return true;
  }

  Rational covolume() const { return abs(basis_.determinant()); }

  /// Canonical basis: HNF(D B) / D with D the least common denominator.
  QMatrix canonical_basis() const {
    const Integer d = basis_.common_denominator();
    const auto hr = hermite_normal_form(ZMatrix::from_rational(Rational(d) * basis_));
    return Rational(1, d) * hr.H.to_rational();
  }

  bool operator==(const IntLattice& o) const {
    return dim() == o.dim() && canonical_basis() == o.canonical_basis();
  }

 private:
  QMatrix basis_;
  QMatrix inverse_;
};

/// Lattice of covectors integral on L; basis is the inverse transpose.
inline IntLattice dual_lattice(const IntLattice& l) { return IntLattice(l.inverse_basis().transpose()); }

inline std::vector<Rational> leading_principal_minors(const QMatrix& g) {
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    QMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = g(i, j);
    minors.push_back(sub.determinant());
  }
  return minors;
}

/// Sylvester criterion. Throws NotSymmetric when G is not symmetric.
inline bool positive_definite(const QMatrix& g) {
  if (!g.square()) throw Error(ErrorKind::DimensionMismatch, "positive_definite needs a square matrix");
  if (!g.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  if (g.rows() == 0) return false;
  for (const auto& m : leading_principal_minors(g))
    if (m <= 0) return false;
  return true;
}

}  // namespace tropcob
