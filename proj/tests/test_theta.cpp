#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropcob;
using testing_support::Gen;

TEST(Theta, CircleMatchesBruteForceMax) {
  const auto p = testing_support::circle_polarization();
  const auto th = testing_support::theta(p, 1);
  Gen g(1);
  for (int t = 0; t < 300; ++t) {
    const QVector u{g.rational(-3, 3, 50)};
    EXPECT_EQ(th(u), testing_support::brute_theta(p, 1, th.delta(), u, 10));
  }
}

TEST(Theta, TwoTorusMatchesBruteForceWithDeltaAndShift) {
  const auto p = testing_support::alpha_polarization(1, 2, 1);
  Gen g(2);
  for (long k = 1; k <= 3; ++k) {
    const CosetSystem cs(p, k);
    std::vector<Rational> d;
    for (std::size_t i = 0; i < cs.size(); ++i) d.push_back(g.rational(0, 1, 9) / (8 * k));
    const QVector w = g.vector(2, -1, 1);
    const auto th = testing_support::theta(p, k, d, w);
    for (int t = 0; t < 40; ++t) {
      const QVector v = g.vector(2, -2, 2);
      EXPECT_EQ(th(v), testing_support::brute_theta(p, k, th.delta(), v + w, 8));
    }
  }
}

TEST(Theta, EvaluationReportsActiveTermsAttainingTheMax) {
  const auto p = testing_support::alpha_polarization();
  const auto th = testing_support::theta(p, 1);
  const auto e = th.evaluate(QVector{1, 1});
  ASSERT_FALSE(e.active.empty());
  for (const auto& a : e.active) EXPECT_EQ(th.term(a, QVector{1, 1}), e.value);
}

TEST(Theta, QuasiPeriodResidualVanishes) {
  Gen g(3);
  for (long k = 1; k <= 3; ++k) {
    const auto p = testing_support::alpha_polarization(1, 1, 2);
    const CosetSystem cs(p, k);
    std::vector<Rational> d;
    for (std::size_t i = 0; i < cs.size(); ++i) d.push_back(g.rational(0, 1, 16) / 8);
    const auto th = testing_support::theta(p, k, d, g.vector(2, -1, 1));
    for (int t = 0; t < 25; ++t) {
      const QVector gamma = p.torus.period({Integer(g.integer(-2, 2)), Integer(g.integer(-2, 2))});
      EXPECT_EQ(quasi_period_residual(th, gamma, g.vector(2, -2, 2)), 0);
    }
  }
  const auto th = testing_support::theta(testing_support::circle_polarization(), 1);
  EXPECT_THROW(quasi_period_residual(th, QVector{make_rational(1, 2)}, QVector{0}), Error);
}

TEST(Theta, CircleCornerLociForSmallK) {
  const auto p = testing_support::circle_polarization();
  auto points = [&](long k) {
    std::vector<Rational> out;
    const auto cx = corner_locus(testing_support::theta(p, k));
    for (const auto& c : cx.cells()) out.push_back(c.shape.vertices().front()[0]);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(points(1), (std::vector<Rational>{make_rational(1, 2)}));
  EXPECT_EQ(points(2), (std::vector<Rational>{make_rational(1, 4), make_rational(3, 4)}));
}

TEST(Theta, DominanceCellsTileTheFundamentalDomain) {
  // every sample point lies in the cell of a maximizing term, up to a period
  const auto p = testing_support::alpha_polarization(1, 2, 2);
  const auto th = testing_support::theta(p, 2);
  Gen g(4);
  for (int t = 0; t < 40; ++t) {
    const QVector u = g.vector(2, -1, 2);
    const auto e = th.evaluate_unshifted(u);
    bool found = false;
    for (const auto& cell : th.cells())
      for (long a = -3; a <= 3 && !found; ++a)
        for (long b = -3; b <= 3 && !found; ++b) {
          const QVector gamma = p.torus.period({Integer(a), Integer(b)});
          if (cell.region.contains(u - gamma)) {
            const QVector alpha = cell.alpha + Rational(2) * p.apply(gamma);
            found = th.term(alpha, u) == e.value;
          }
        }
    EXPECT_TRUE(found);
  }
}

TEST(NormVectors, ConstraintEquationsHoldExactly) {
  Gen g(5);
  const std::vector<Polarization> ps{testing_support::circle_polarization(), testing_support::alpha_polarization()};
  for (const auto& p : ps) {
    for (int t = 0; t < 50; ++t) {
      const long k = g.integer(1, 4);
      const AffineFunctionClass cls{g.vector(p.dim(), -3, 3), g.rational(-3, 3)};
      if (is_zero(cls.alpha)) continue;
      const auto w = linear_to_norm_vectors(p, k, cls);
      const QVector lhs = Rational(k) * p.apply(w.w_plus - w.w_minus);
      EXPECT_EQ(lhs, cls.alpha);
      EXPECT_EQ(make_rational(k, 2) * (p.metric.norm_sq(w.w_plus) - p.metric.norm_sq(w.w_minus)), cls.b);
    }
  }
}

TEST(NormVectors, RationalFunctionHasTheRequestedClass) {
  Gen g(6);
  const auto p = testing_support::alpha_polarization();
  const long k = 2;
  const CosetSystem cs(p, k);
  const AffineFunctionClass cls{{make_rational(1, 3), make_rational(-2, 5)}, make_rational(1, 7)};
  const auto phi = section_to_rational_fn(p, k, cls, zero_delta(cs), zero_delta(cs));
  std::vector<PeriodSample> samples;
  for (int t = 0; t < 30; ++t)
    samples.push_back({g.vector(2, -2, 2), p.torus.period({Integer(g.integer(-2, 2)), Integer(g.integer(-2, 2))})});
  EXPECT_TRUE(verify_class_equality(phi, cls, samples).ok);

  // a non-lattice perturbation of w_+ breaks the class
  const auto w = linear_to_norm_vectors(p, k, cls);
  const TropicalRationalFn bad{make_theta(p, k, zero_delta(cs), w.w_plus + QVector{make_rational(1, 11), 0}),
                               make_theta(p, k, zero_delta(cs), w.w_minus)};
  const auto res = verify_class_equality(bad, cls, samples);
  EXPECT_FALSE(res.ok);
  EXPECT_NE(res.defect, 0);
}

TEST(NormVectors, ClassesAgreeModuloIntegralCovectors) {
  const auto b = testing_support::alpha_torus(1, 1, 1);
  EXPECT_TRUE(same_class(b, {{make_rational(1, 2), 0}, 0}, {{make_rational(3, 2), -1}, 0}));
  EXPECT_FALSE(same_class(b, {{make_rational(1, 2), 0}, 0}, {{0, 0}, 0}));
}
