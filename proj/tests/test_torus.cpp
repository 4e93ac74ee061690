#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropcob;
using testing_support::Gen;

TEST(Torus, AlphaOneOneOneHasGramTwoOneOneTwo) {
  const auto [p, m] = validate_polarization(testing_support::alpha_torus(1, 1, 1), QMatrix::identity(2));
  EXPECT_EQ(p.gram, (QMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(m.G * p.torus.periods().basis(), p.c);
  EXPECT_EQ(polarization_exponent(p), 1);
}

TEST(Torus, AlphaFamilyGramMatchesClosedForm) {
  Gen g(17);
  for (int t = 0; t < 20; ++t) {
    const Rational a1 = g.positive_rational(), a2 = g.positive_rational(), a3 = g.positive_rational();
    const auto p = testing_support::alpha_polarization(a1, a2, a3);
    // <gamma_i, gamma_j> = c(gamma_j)(gamma_i) with c(gamma_j) = dx_j
    const QMatrix expected{{a1 + a2, a2}, {a2, a2 + a3}};
    EXPECT_EQ(p.gram, expected);
    EXPECT_TRUE(positive_definite(p.gram));
  }
}

TEST(Torus, ValidationErrorsAreOrdered) {
  const auto b = make_torus(QMatrix::identity(2), QMatrix::identity(2));
  EXPECT_THROW(validate_polarization(b, QMatrix::identity(3)), Error);
  try {
    validate_polarization(b, QMatrix{{make_rational(1, 2), 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIntegral);
  }
  try {
    validate_polarization(b, QMatrix{{1, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
  }
  try {
    validate_polarization(b, QMatrix{{1, 0}, {0, -1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositiveDefinite);
  }
}

TEST(Torus, ReduceLandsInFundamentalDomainAndIsCanonical) {
  Gen g(2);
  const auto b = testing_support::alpha_torus(1, 2, 1);
  for (int t = 0; t < 50; ++t) {
    const QVector v = g.vector(2, -5, 5);
    const QVector r = b.reduce(v);
    for (const auto& c : b.periods().coordinates(r)) {
      EXPECT_GE(c, 0);
      EXPECT_LT(c, 1);
    }
    EXPECT_TRUE(b.same_point(v, r));
    const QVector shifted = v + b.period({Integer(g.integer(-3, 3)), Integer(g.integer(-3, 3))});
    EXPECT_EQ(b.reduce(shifted), r);
  }
}

TEST(Torus, DualTorusIsInvolutive) {
  const auto b = testing_support::alpha_torus(make_rational(1, 2), 1, 3);
  EXPECT_TRUE(dual_torus(dual_torus(b)) == b);
  EXPECT_TRUE(dual_torus(b).periods() == b.covector_lattice());
}

TEST(Torus, DualPolarizationScalesInverseMetric) {
  const auto p = testing_support::alpha_polarization();
  const auto d = dual_polarization(p);
  EXPECT_EQ(d.metric.G, Rational(polarization_exponent(p)) * p.metric.G_inv);
  EXPECT_TRUE(positive_definite(d.gram));
}

TEST(Metric, SharpIsDualToPairing) {
  Gen g(8);
  const auto p = testing_support::alpha_polarization(1, 2, 3);
  for (int t = 0; t < 20; ++t) {
    const QVector a = g.vector(2, -3, 3);
    const QVector v = g.vector(2, -3, 3);
    EXPECT_EQ(p.metric.pairing(sharp(p.metric, a), v), dot(a, v));
    EXPECT_EQ(p.metric.covector_norm_sq(a), norm_sq(p.metric, sharp(p.metric, a)));
  }
}

// Z^2 / 2Z^2 by explicit enumeration.
TEST(Cosets, StandardLatticeModTwo) {
  const auto p = validate_polarization(make_torus(QMatrix::identity(2), QMatrix::identity(2)), QMatrix::identity(2)).first;
  const CosetSystem cs(p, 2);
  EXPECT_EQ(cs.size(), 4u);
  std::set<std::size_t> idx;
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 2; ++y) idx.insert(cs.index_of(QVector{x, y}));
  EXPECT_EQ(idx.size(), 4u);
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) {
      const long rx = ((x % 2) + 2) % 2, ry = ((y % 2) + 2) % 2;
      EXPECT_EQ(cs.index_of(QVector{x, y}), cs.index_of(QVector{rx, ry}));
    }
}

TEST(Cosets, RepresentativesAreDistinctAndIndexedConsistently) {
  for (long k = 1; k <= 4; ++k) {
    const auto p = testing_support::alpha_polarization();
    const CosetSystem cs(p, k);
    // |Lambda_2^vee / k c(Lambda_1)| = det(k * in_bases)
    EXPECT_EQ(Integer(cs.size()), abs(Integer(k * k) * p.in_bases.determinant()));
    for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs.index_of(cs.representatives()[i]), i);
    // shifting by k c(gamma) preserves the coset
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const QVector moved = cs.representatives()[i] + Rational(k) * p.c.col(0) - Rational(2 * k) * p.c.col(1);
      EXPECT_EQ(cs.index_of(moved), i);
    }
  }
  EXPECT_THROW(coset_system(testing_support::alpha_polarization(), 1).index_of(QVector{make_rational(1, 2), 0}), Error);
}
