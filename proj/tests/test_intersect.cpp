#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropcob;
using testing_support::Gen;

namespace {

Integer total_weight(const TropicalComplex& cx) {
  Integer s = 0;
  for (auto id : cx.cells_of_dim(cx.pure_dim())) s += cx.cell(id).weight;
  return s;
}

std::vector<AffineTerm> tropical_line_at(const Rational& a, const Rational& b) {
  return {{{0, 0}, 0}, {{1, 0}, -a}, {{0, 1}, -b}};
}

std::vector<PointPair> alpha_pairs() {
  return {{{make_rational(1, 3), make_rational(1, 5)}, {make_rational(2, 7), 0}},
          {{0, make_rational(1, 2)}, {make_rational(3, 11), make_rational(1, 9)}},
          {{make_rational(1, 4), make_rational(1, 4)}, {0, make_rational(2, 3)}}};
}

}  // namespace

TEST(Transversality, DistinctCirclePointsAreTransverse) {
  const auto p = testing_support::circle_polarization();
  const auto a = corner_locus(testing_support::theta(p, 1));
  const auto b = corner_locus(testing_support::theta(p, 1, {}, {make_rational(1, 4)}));
  EXPECT_TRUE(check_transverse(a, b).pass);
  EXPECT_TRUE(intersect_complexes(a, b).empty());
  const auto rep = check_transverse(a, a);
  EXPECT_FALSE(rep.pass);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front().point, (QVector{make_rational(1, 2)}));
  EXPECT_THROW(intersect_complexes(a, a), Error);
}

TEST(Transversality, CheckIsSymmetric) {
  Gen g(41);
  const auto p = testing_support::alpha_polarization(1, 2, 1);
  for (int t = 0; t < 8; ++t) {
    const auto a = corner_locus(testing_support::theta(p, 1, {}, g.vector(2, -1, 1, 4)));
    const auto b = corner_locus(testing_support::theta(p, 1, {}, g.vector(2, -1, 1, 4)));
    EXPECT_EQ(check_transverse(a, b).pass, check_transverse(b, a).pass);
  }
}

TEST(Transversality, MismatchedAmbientsAreRejected) {
  const auto a = corner_locus(testing_support::theta(testing_support::circle_polarization(), 1));
  const auto b = corner_locus(testing_support::theta(testing_support::alpha_polarization(), 1));
  EXPECT_THROW(check_transverse(a, b), Error);
}

TEST(Intersection, TwoTropicalLinesMeetOnce) {
  const auto l1 = corner_locus_affine(tropical_line_at(0, 0), {-2, -2}, {2, 2});
  const auto l2 = corner_locus_affine(tropical_line_at(make_rational(1, 2), make_rational(1, 3)), {-2, -2}, {2, 2});
  ASSERT_TRUE(check_transverse(l1, l2).pass);
  const auto meet = intersect_complexes(l1, l2);
  ASSERT_EQ(meet.cells_of_dim(0).size(), 1u);
  const auto& pt = meet.cell(meet.cells_of_dim(0).front());
  EXPECT_EQ(pt.shape.vertices().front(), (QVector{make_rational(1, 3), make_rational(1, 3)}));
  EXPECT_EQ(pt.weight, 1);
  EXPECT_FALSE(check_transverse(l1, l1).pass);
}

TEST(Intersection, MultiplicityIsTheLatticeIndex) {
  // the wall x = 1/2 of weight 2 against the wall y = 0 of weight 1, normals spanning Z^2
  const auto v = corner_locus_affine({{{0, 0}, 0}, {{2, 0}, -1}}, {-2, -2}, {2, 2});
  const auto h = corner_locus_affine({{{0, 0}, 0}, {{0, 1}, 0}}, {-2, -2}, {2, 2});
  const auto meet = intersect_complexes(v, h);
  ASSERT_EQ(meet.cells_of_dim(0).size(), 1u);
  EXPECT_EQ(meet.cell(meet.cells_of_dim(0).front()).weight, 2);
  // a slanted wall x = y against y = 0 meets with index |det((1,1),(1,0))| = 1
  const auto d = corner_locus_affine({{{0, 0}, 0}, {{1, -1}, 0}}, {-2, -2}, {2, 2});
  EXPECT_EQ(total_weight(intersect_complexes(d, h)), 1);
}

// Two theta divisors of levels k1, k2 on a polarized 2-torus meet in
// 2 * k1 * k2 * det(c) points counted with weight.
TEST(Intersection, ThetaDivisorsMeetInTheSelfIntersectionNumber) {
  Gen g(42);
  struct Case {
    QMatrix c;
    long k1, k2;
  };
  const std::vector<Case> cases{{QMatrix::identity(2), 1, 1}, {QMatrix::identity(2), 1, 2},
                                {QMatrix{{2, 0}, {0, 2}}, 1, 1}};
  for (const auto& cs : cases) {
    const auto p = validate_polarization(testing_support::alpha_torus(1, 1, 1), cs.c).first;
    const Integer expected = 2 * cs.k1 * cs.k2 * abs(p.in_bases.determinant());
    int done = 0;
    for (int t = 0; t < 30 && done < 3; ++t) {
      const auto a = corner_locus(testing_support::theta(p, cs.k1, {}, g.vector(2, -1, 1)));
      const auto b = corner_locus(testing_support::theta(p, cs.k2, {}, g.vector(2, -1, 1)));
      if (!check_transverse(a, b).pass) continue;
      const auto meet = intersect_complexes(a, b);
      EXPECT_EQ(meet.pure_dim(), 0);
      EXPECT_EQ(total_weight(meet), expected);
      ++done;
    }
    EXPECT_EQ(done, 3);
  }
}

TEST(DeltaDirection, PairOfPantsVertexMovesAgainstTheRaisedTerm) {
  const std::vector<QVector> active{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_EQ(delta_direction_terms(active, {0, 1, 0}), (QVector{-1, 0}));
  EXPECT_EQ(delta_direction_terms(active, {1, 1, 1}), (QVector{0, 0}));
  EXPECT_EQ(delta_direction_terms({{0, 0}, {2, 0}}, {0, 1}), (QVector{make_rational(-1, 2), 0}));
  EXPECT_THROW(delta_direction_terms(active, {0, 1}), Error);
}

TEST(DeltaDirection, MatchesFiniteDifferenceOnATorusLocus) {
  const auto p = testing_support::alpha_polarization();
  const CosetSystem cs(p, 2);
  std::vector<Rational> d0(cs.size(), Rational(0)), dprime(cs.size(), Rational(0));
  dprime[1] = make_rational(1, 64);
  const auto before = corner_locus(make_theta(p, 2, make_delta(cs, d0), zero_vector(2)));
  const auto after = corner_locus(make_theta(p, 2, make_delta(cs, dprime), zero_vector(2)));
  // every moved vertex of the perturbed locus sits at a predicted position
  for (auto id : before.cells_of_dim(0)) {
    const QVector moved = before.cell(id).shape.vertices().front() + delta_direction(before, id, cs, dprime);
    bool found = false;
    for (auto jd : after.cells_of_dim(0))
      found = found || after.torus()->same_point(after.cell(jd).shape.vertices().front(), moved);
    if (before.cell(id).active.size() == 3) EXPECT_TRUE(found);
  }
}

TEST(Perturbation, ZeroBudgetIsExhausted) {
  const auto p = testing_support::circle_polarization();
  const CosetSystem cs(p, 1);
  const std::vector<PerturbationTarget> targets{{{0}, cs}, {{make_rational(1, 3)}, cs}};
  try {
    perturb_search(p, 1, targets, 7, 0);
    FAIL();
  } catch (const ExhaustedError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Exhausted);
    EXPECT_FALSE(e.partial().complete);
  }
}

TEST(Perturbation, SameSeedGivesTheSameCertificate) {
  const auto p = testing_support::alpha_polarization();
  const auto a = verify_filtration_vanishing(p, alpha_pairs(), 1, 5, 20);
  const auto b = verify_filtration_vanishing(p, alpha_pairs(), 1, 5, 20);
  ASSERT_EQ(a.certificate.hypersurfaces.size(), b.certificate.hypersurfaces.size());
  for (std::size_t i = 0; i < a.certificate.hypersurfaces.size(); ++i)
    EXPECT_EQ(a.certificate.hypersurfaces[i].delta, b.certificate.hypersurfaces[i].delta);
}

TEST(Replay, AcceptsGenuineAndRejectsTamperedCertificates) {
  const auto p = testing_support::alpha_polarization();
  const auto res = verify_filtration_vanishing(p, alpha_pairs(), 1, 3, 20);
  ASSERT_EQ(res.status, FiltrationStatus::Vanishes);
  const auto& cert = res.certificate;
  EXPECT_TRUE(replay(res.dual, cert).ok);

  for (std::size_t h = 0; h < cert.hypersurfaces.size(); ++h) {
    for (std::size_t i = 0; i < cert.hypersurfaces[h].delta.size(); ++i) {
      auto bad = cert;
      Rational& d = bad.hypersurfaces[h].delta[i];
      // flip the lowest bit of the numerator over the sampling denominator
      const Integer den = 65536L * 8L * cert.k;
      Integer num = Integer(d * den);
      num ^= 1;
      d = Rational(num, den);
      d.canonicalize();
      const auto r = replay(res.dual, bad);
      EXPECT_FALSE(r.ok) << "hypersurface " << h << " coset " << i;
    }
  }

  auto flipped = cert;
  flipped.empty.begin()->second = false;
  EXPECT_FALSE(replay(res.dual, flipped).ok);

  auto stage = cert;
  stage.stages.front().dim += 1;
  EXPECT_FALSE(replay(res.dual, stage).ok);
}

TEST(Replay, ReusedHypersurfaceIsCaughtAsNonTransverse) {
  const auto p = testing_support::alpha_polarization();
  const auto res = verify_filtration_vanishing(p, alpha_pairs(), 1, 3, 20);
  auto bad = res.certificate;
  const auto group = bad.hypersurfaces[2].group;
  bad.hypersurfaces[2] = bad.hypersurfaces[0];
  bad.hypersurfaces[2].group = group;
  const auto r = replay(res.dual, bad);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.first_mismatch.find("stage"), std::string::npos) << r.first_mismatch;
}
