#pragma once

// Exact rational scalars, dense vectors and matrices.
//
// Everything here is GMP-backed and exact. Matrices are row-major; lattice
// bases elsewhere in the library are stored column-wise in these matrices.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropcob/errors.hpp"

namespace tropcob {

using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");
  if (s.front() == '+') s.erase(s.begin());
  const auto slash = s.find('/');
  Integer num, den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0) {
    throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
  }
  if (slash != std::string::npos) {
    const std::string d = s.substr(slash + 1);
    if (d.empty() || d.front() == '-' || d.front() == '+' || den.set_str(d, 10) != 0) {
      throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
    }
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", with "/q" omitted when q = 1.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline QVector make_qvector(std::initializer_list<Rational> xs) { return QVector(xs); }

inline QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector +");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector -");
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVector operator-(const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline QVector operator*(const Rational& s, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool lex_less(const QVector& a, const QVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct QVectorLess {
  bool operator()(const QVector& a, const QVector& b) const { return lex_less(a, b); }
};

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static QMatrix from_rows(const std::vector<QVector>& rows) {
    if (rows.empty()) return {};
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "from_rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static QMatrix from_columns(const std::vector<QVector>& cols) {
    return from_rows(cols).transpose();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const {
    return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  QVector col(std::size_t j) const {
    QVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<QVector> columns() const {
    std::vector<QVector> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
    return out;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  QMatrix operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  QVector operator*(const QVector& v) const {
    if (cols_ != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    QVector r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  QMatrix operator+(const QMatrix& o) const {
    check_same_shape(o);
    QMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  QMatrix operator-(const QMatrix& o) const {
    check_same_shape(o);
    QMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  friend QMatrix operator*(const Rational& s, const QMatrix& m) {
    QMatrix r = m;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_integer() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.get_den() == 1; });
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  /// Least common multiple of all entry denominators.
  Integer common_denominator() const {
    Integer d = 1;
    for (const auto& x : data_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
  }

  Rational determinant() const {
    if (!square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    QMatrix a = *this;
    Rational det = 1;
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c) == 0) ++p;
      if (p == n) return 0;
      if (p != c) {
        a.swap_rows(p, c);
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c) == 0) continue;
        const Rational f = a(r, c) / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      }
    }
    return det;
  }

  /// Reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      const Rational inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0) continue;
        const Rational f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    QMatrix a = *this;
    return a.rref_in_place().size();
  }

  /// Basis of the right kernel {x : A x = 0}.
  std::vector<QVector> nullspace() const {
    QMatrix a = *this;
    const auto pivots = a.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      QVector x(cols_, Rational(0));
      x[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -a(i, free);
      basis.push_back(std::move(x));
    }
    return basis;
  }

  QMatrix inverse() const {
    if (!square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = rows_;
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    const auto pivots = aug.rref_in_place();
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorKind::Singular, "matrix is singular");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  /// Any solution of A x = b, or nullopt when inconsistent.
  std::optional<QVector> solve(const QVector& b) const {
    if (b.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "solve");
    QMatrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    const auto pivots = aug.rref_in_place();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    QVector x(cols_, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
    return x;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  void check_same_shape(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Dimension of the linear span of a set of vectors in Q^n.
inline std::size_t span_dimension(const std::vector<QVector>& vs) {
  if (vs.empty()) return 0;
  return QMatrix::from_rows(vs).rank();
}

/// A basis (as rows) of the span of `vs`, taken from the reduced row echelon form.
inline std::vector<QVector> span_basis(const std::vector<QVector>& vs) {
  if (vs.empty()) return {};
  QMatrix m = QMatrix::from_rows(vs);
  const auto pivots = m.rref_in_place();
  std::vector<QVector> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace tropcob
