#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "tropcob/tropcob.hpp"

namespace testing_support {

using namespace tropcob;

/// Seeded source of small random rationals and integers.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long lo, long hi, long max_den = 12) {
    const long den = integer(1, max_den);
    const long num = integer(lo * den, hi * den);
    return make_rational(num, den);
  }

  Rational positive_rational(long max_num = 5, long max_den = 7) {
    return make_rational(integer(1, max_num * max_den), integer(1, max_den));
  }

  QVector vector(std::size_t n, long lo, long hi, long max_den = 12) {
    QVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational(lo, hi, max_den));
    return v;
  }

  QMatrix integer_matrix(std::size_t r, std::size_t c, long lo, long hi) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(lo, hi);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Torus of the family R^2 / <(a1+a2, a2), (a2, a2+a3)> with c(gamma_i) = dx_i.
inline TropicalAffineTorus alpha_torus(const Rational& a1, const Rational& a2, const Rational& a3) {
  return make_torus(QMatrix{{a1 + a2, a2}, {a2, a2 + a3}}, QMatrix::identity(2));
}

inline Polarization alpha_polarization(const Rational& a1 = 1, const Rational& a2 = 1, const Rational& a3 = 1) {
  return validate_polarization(alpha_torus(a1, a2, a3), QMatrix::identity(2)).first;
}

inline Polarization circle_polarization() {
  return validate_polarization(make_torus(QMatrix{{1}}, QMatrix{{1}}), QMatrix{{1}}).first;
}

inline ThetaFunction theta(const Polarization& p, long k, const std::vector<Rational>& delta = {},
                           const QVector& w = {}) {
  const CosetSystem cs(p, k);
  std::vector<Rational> d = delta.empty() ? std::vector<Rational>(cs.size(), Rational(0)) : delta;
  return make_theta(p, k, make_delta(cs, d), w.empty() ? zero_vector(p.dim()) : w);
}

/// Brute-force max over the coefficient box |m_i| <= r of the theta terms, in the
/// covector-lattice coordinates, at a point u of the unshifted variable.
inline Rational brute_theta(const Polarization& p, long k, const DeltaFunction& delta, const QVector& u, long r) {
  const std::size_t n = p.dim();
  const QMatrix basis = p.torus.covector_lattice().basis();
  std::vector<long> m(n, -r);
  bool first = true;
  Rational best;
  while (true) {
    QVector alpha(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) alpha = alpha + Rational(m[i]) * basis.col(i);
    const Rational val = dot(alpha, u) - dot(alpha, p.metric.G_inv * alpha) / (2 * k) + delta(alpha);
    if (first || val > best) best = val;
    first = false;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (m[i] < r) {
        ++m[i];
        break;
      }
      m[i] = -r;
    }
    if (i == n) break;
  }
  return best;
}

}  // namespace testing_support
