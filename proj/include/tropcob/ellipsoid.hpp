#pragma once

// Exact enumeration of integer points z with (z - t)^T M (z - t) <= bound,
// M symmetric positive definite (Fincke-Pohst over rationals).

#include <cstddef>
#include <functional>
#include <vector>

#include "tropcob/rational.hpp"

namespace tropcob {

/// M = U^T D U with U unit upper triangular.
struct LdlFactor {
  QMatrix U;
  QVector D;
};

inline LdlFactor ldl_factor(const QMatrix& m) {
  const std::size_t n = m.rows();
  QMatrix l = QMatrix::identity(n);
  QVector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = m(i, i);
    for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * l(i, j) * d[j];
    if (s <= 0) throw Error(ErrorKind::NotPositiveDefinite, "ldl_factor");
    d[i] = s;
    for (std::size_t k = i + 1; k < n; ++k) {
      Rational v = m(k, i);
      for (std::size_t j = 0; j < i; ++j) v -= l(k, j) * l(i, j) * d[j];
      l(k, i) = v / d[i];
    }
  }
  return {l.transpose(), d};
}

inline Rational quadratic_form(const QMatrix& m, const QVector& y) { return dot(y, m * y); }

/// Calls `fn(z)` for every integer z with (z - t)^T M (z - t) <= bound.
inline void for_each_point_in_ellipsoid(const QMatrix& m, const QVector& t, const Rational& bound,
                                        const std::function<void(const std::vector<Integer>&)>& fn) {
  const std::size_t n = m.rows();
  if (bound < 0) return;
  const LdlFactor f = ldl_factor(m);
  std::vector<Integer> z(n);
  // rem[i]: budget left for coordinates 0..i-1 after fixing i..n-1
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level, const Rational& rem) {
    const std::size_t i = level - 1;
    Rational c = t[i];
    for (std::size_t k = i + 1; k < n; ++k) c -= f.U(i, k) * (Rational(z[k]) - t[k]);
    auto fits = [&](const Integer& zi) {
      const Rational y = Rational(zi) - c;
      return f.D[i] * y * y <= rem;
    };
    auto visit = [&](const Integer& zi) {
      z[i] = zi;
      const Rational y = Rational(zi) - c;
      const Rational left = rem - f.D[i] * y * y;
      if (i == 0) {
        fn(z);
      } else {
        rec(i, left);
      }
    };
    const Integer start = floor_of(c);
    for (Integer zi = start; fits(zi); --zi) visit(zi);
    for (Integer zi = start + 1; fits(zi); ++zi) visit(zi);
  };
  if (n == 0) {
    fn(z);
    return;
  }
  rec(n, bound);
}

/// Babai nearest-plane point for the same quadratic form.
inline std::vector<Integer> babai_point(const QMatrix& m, const QVector& t) {
  const std::size_t n = m.rows();
  const LdlFactor f = ldl_factor(m);
  std::vector<Integer> z(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational c = t[ii];
    for (std::size_t k = ii + 1; k < n; ++k) c -= f.U(ii, k) * (Rational(z[k]) - t[k]);
    z[ii] = floor_of(c + Rational(1, 2));
  }
  return z;
}

/// Upper bound for the squared covering radius: (1/4) sum of Gram-Schmidt norms.
inline Rational covering_radius_sq_bound(const QMatrix& m) {
  const LdlFactor f = ldl_factor(m);
  Rational s = 0;
  for (const auto& d : f.D) s += d;
  return s / 4;
}

}  // namespace tropcob
