#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropcob;
using testing_support::Gen;

namespace {

std::vector<Rational> random_delta(Gen& g, const Polarization& p, long k) {
  const CosetSystem cs(p, k);
  std::vector<Rational> d;
  for (std::size_t i = 0; i < cs.size(); ++i) d.push_back(g.rational(0, 1, 16) / (8 * k));
  return d;
}

Integer total_top_weight(const TropicalComplex& cx) {
  Integer s = 0;
  for (const auto& c : cx.cells())
    if (c.dim() == cx.pure_dim()) s += c.weight;
  return s;
}

}  // namespace

// On a circle R/aZ with c(gamma) = m, the slope of f grows by k*m per period,
// so the corner points carry total weight k*m.
TEST(CornerLocus, CircleWeightsSumToSlopeJump) {
  Gen g(31);
  for (int t = 0; t < 20; ++t) {
    const Rational a = g.positive_rational(3, 5);
    const long m = g.integer(1, 3);
    const auto p = validate_polarization(make_torus(QMatrix{{a}}, QMatrix{{1}}), QMatrix{{m}}).first;
    const long k = g.integer(1, 3);
    const auto cx = corner_locus(testing_support::theta(p, k, random_delta(g, p, k), g.vector(1, -1, 1)));
    EXPECT_EQ(cx.pure_dim(), 0);
    EXPECT_EQ(total_top_weight(cx), Integer(k * m));
    for (const auto& c : cx.cells()) {
      const Rational x = c.shape.vertices().front()[0];
      EXPECT_GE(x, 0);
      EXPECT_LT(x, a);
    }
  }
}

TEST(CornerLocus, CellsCarryTheMaximisingTerms) {
  Gen g(32);
  const auto p = testing_support::alpha_polarization(1, 2, 1);
  for (long k = 1; k <= 2; ++k) {
    const QVector w = g.vector(2, -1, 1);
    const auto th = testing_support::theta(p, k, random_delta(g, p, k), w);
    const auto cx = corner_locus(th);
    ASSERT_FALSE(cx.empty());
    for (const auto& c : cx.cells()) {
      const QVector x = c.shape.barycenter();
      const Rational best = testing_support::brute_theta(p, k, th.delta(), x + w, 8);
      ASSERT_GE(c.active.size(), 2u);
      for (const auto& a : c.active) EXPECT_EQ(th.term(a, x + w), best);
    }
  }
}

TEST(CornerLocus, RandomDeltaOnTwoTorusIsBalanced) {
  Gen g(33);
  for (int t = 0; t < 10; ++t) {
    const auto p = testing_support::alpha_polarization(g.positive_rational(2, 3), g.positive_rational(2, 3),
                                                       g.positive_rational(2, 3));
    const long k = g.integer(1, 2);
    const auto cx = corner_locus(testing_support::theta(p, k, random_delta(g, p, k), g.vector(2, -1, 1)));
    const auto rep = balancing_report(cx);
    EXPECT_TRUE(rep.balanced) << "trial " << t;
  }
}

TEST(CornerLocus, TamperedWeightBreaksBalancing) {
  auto cx = corner_locus(testing_support::theta(testing_support::alpha_polarization(), 1));
  ASSERT_TRUE(check_balancing(cx));
  const auto edges = cx.cells_of_dim(1);
  ASSERT_FALSE(edges.empty());
  cx.cells()[edges.front()].weight += 1;
  const auto rep = balancing_report(cx);
  EXPECT_FALSE(rep.balanced);
  EXPECT_TRUE(rep.first_failure.has_value());
}

TEST(CornerLocus, ZeroDeltaHexagonalLocusIsRegular) {
  const auto cx = corner_locus(testing_support::theta(testing_support::alpha_polarization(), 1));
  EXPECT_EQ(cx.cells_of_dim(1).size(), 3u);
  EXPECT_EQ(cx.cells_of_dim(0).size(), 2u);
  EXPECT_TRUE(check_regular(cx));
  for (auto id : cx.cells_of_dim(0)) EXPECT_EQ(dual_polytope_at(cx, id).dim, 2);
}

TEST(Fixture, TropicalLineHasThreeUnitRays) {
  const std::vector<AffineTerm> terms{{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}};
  const auto cx = corner_locus_affine(terms, {-1, -1}, {1, 1});
  const auto rays = cx.cells_of_dim(1);
  ASSERT_EQ(rays.size(), 3u);
  for (auto id : rays) EXPECT_EQ(cx.cell(id).weight, 1);
  const auto verts = cx.cells_of_dim(0);
  std::size_t interior = 0;
  for (auto id : verts) {
    if (cx.cell(id).boundary) continue;
    ++interior;
    EXPECT_EQ(cx.cell(id).shape.vertices().front(), (QVector{0, 0}));
    const auto dp = dual_polytope_at(cx, id);
    EXPECT_EQ(dp.dim, 2);
    EXPECT_EQ(dp.vertices.size(), 3u);
  }
  EXPECT_EQ(interior, 1u);
  EXPECT_TRUE(check_balancing(cx));
  EXPECT_TRUE(check_regular(cx));
}

TEST(Fixture, DoubledWallHasWeightTwoAndIsNotRegular) {
  const std::vector<AffineTerm> terms{{{0, 0}, 0}, {{2, 0}, 0}};
  const auto cx = corner_locus_affine(terms, {-1, -1}, {1, 1});
  const auto walls = cx.cells_of_dim(1);
  ASSERT_EQ(walls.size(), 1u);
  EXPECT_EQ(cx.cell(walls.front()).weight, 2);
  const auto rep = regularity_report(cx);
  EXPECT_FALSE(rep.regular);
  EXPECT_FALSE(rep.reason.empty());
}

TEST(Fixture, SquareVertexIsNotASimplex) {
  const std::vector<AffineTerm> terms{{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}};
  const auto cx = corner_locus_affine(terms, {-1, -1}, {1, 1});
  EXPECT_TRUE(check_balancing(cx));
  EXPECT_FALSE(check_regular(cx));
}

TEST(Fixture, UnbalancedHandBuiltComplexIsCaught) {
  // reweight the ray heading in direction (-1, 0)
  const std::vector<AffineTerm> terms{{{0, 0}, 0}, {{1, 0}, 0}, {{0, 1}, 0}};
  auto cx = corner_locus_affine(terms, {-1, -1}, {1, 1});
  for (auto id : cx.cells_of_dim(1)) {
    if (cx.cell(id).shape.vertices().front()[0] < 0) cx.cells()[id].weight = 3;
  }
  EXPECT_FALSE(check_balancing(cx));
}
