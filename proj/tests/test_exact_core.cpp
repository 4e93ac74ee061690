#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tropcob;
using testing_support::Gen;

TEST(Rational, ParsesAndPrintsExactly) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational(" +4/2"), Rational(2));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  for (const char* bad : {"", "1/0", "x", "1/", "1/-2", "1.5"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(floor_of(make_rational(-1, 3)), -1);
  EXPECT_EQ(ceil_of(make_rational(-1, 3)), 0);
  EXPECT_EQ(floor_of(Rational(4)), 4);
  EXPECT_EQ(ceil_of(make_rational(7, 2)), 4);
}

TEST(Matrix, InverseAndSolveAgree) {
  Gen g(11);
  for (int t = 0; t < 30; ++t) {
    QMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = g.rational(-3, 3);
    if (m.determinant() == 0) {
      EXPECT_THROW(m.inverse(), Error);
      continue;
    }
    EXPECT_EQ(m * m.inverse(), QMatrix::identity(3));
    const QVector b = g.vector(3, -2, 2);
    const auto x = m.solve(b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m * *x, b);
  }
}

TEST(Matrix, NullspaceIsAnnihilatedAndComplementsRank) {
  Gen g(5);
  for (int t = 0; t < 30; ++t) {
    const QMatrix m = g.integer_matrix(2, 4, -3, 3);
    const auto ns = m.nullspace();
    EXPECT_EQ(ns.size() + m.rank(), 4u);
    for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
  }
}

TEST(Hermite, ColumnFormIsLowerTriangularAndEquivalent) {
  Gen g(7);
  for (int t = 0; t < 40; ++t) {
    const QMatrix q = g.integer_matrix(3, 3, -6, 6);
    if (q.determinant() == 0) continue;
    const ZMatrix m = ZMatrix::from_rational(q);
    const auto hr = hermite_normal_form(m);
    EXPECT_TRUE(is_unimodular(hr.U));
    EXPECT_EQ((m * hr.U).to_rational(), hr.H.to_rational());
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GT(hr.H(i, i), 0);
      for (std::size_t j = i + 1; j < 3; ++j) EXPECT_EQ(hr.H(i, j), 0);
      for (std::size_t j = 0; j < i; ++j) {
        EXPECT_GE(hr.H(i, j), 0);
        EXPECT_LT(hr.H(i, j), hr.H(i, i));
      }
    }
    EXPECT_EQ(abs(m.determinant()), hr.H(0, 0) * hr.H(1, 1) * hr.H(2, 2));
  }
}

TEST(Smith, DiagonalDividesAndMatchesDeterminantalDivisors) {
  Gen g(9);
  for (int t = 0; t < 40; ++t) {
    const ZMatrix m = ZMatrix::from_rational(g.integer_matrix(3, 3, -8, 8));
    const auto sr = smith_normal_form(m);
    EXPECT_TRUE(is_unimodular(sr.U));
    EXPECT_TRUE(is_unimodular(sr.V));
    EXPECT_EQ((sr.U * m * sr.V).to_rational(), sr.S.to_rational());
    const auto d = sr.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] == 0) continue;
      EXPECT_EQ(d[i + 1] % d[i], 0);
    }
    // first invariant factor is the gcd of all entries
    std::vector<Integer> entries;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) entries.push_back(m(i, j));
    EXPECT_EQ(abs(d[0]), gcd_of(entries));
    Integer prod = 1;
    for (const auto& x : d) prod *= x;
    EXPECT_EQ(abs(prod), abs(m.determinant()));
  }
}

TEST(Lattice, IntegerKernelSpansAllSmallSolutions) {
  const QMatrix a{{1, 2, 3}};
  const auto ker = integer_kernel(a);
  ASSERT_EQ(ker.size(), 2u);
  // every small integer solution is an integer combination of the kernel basis
  QMatrix kb(3, 2);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) kb(i, j) = ker[j][i];
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y)
      for (long z = -4; z <= 4; ++z) {
        if (x + 2 * y + 3 * z != 0) continue;
        const QVector target{Rational(x), Rational(y), Rational(z)};
        QMatrix top{{kb(0, 0), kb(0, 1)}, {kb(1, 0), kb(1, 1)}};
        QVector rhs{target[0], target[1]};
        if (top.determinant() == 0) {
          top = QMatrix{{kb(0, 0), kb(0, 1)}, {kb(2, 0), kb(2, 1)}};
          rhs = {target[0], target[2]};
        }
        const QVector c = *top.solve(rhs);
        EXPECT_TRUE(is_integer(c[0]) && is_integer(c[1]));
        EXPECT_EQ(kb * c, target);
      }
}

TEST(Lattice, EqualityIgnoresBasisChoice) {
  const IntLattice a(QMatrix{{2, 1}, {1, 2}});
  const IntLattice b(QMatrix{{3, 1}, {3, 2}});  // columns (3,3),(1,2) = (2,1)+(1,2), (1,2)
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.covolume(), 3);
  EXPECT_TRUE(a.contains(QVector{3, 3}));
  EXPECT_FALSE(a.contains(QVector{1, 1}));
  EXPECT_THROW(IntLattice(QMatrix{{1, 2}, {2, 4}}), Error);
}

TEST(Lattice, DualPairingIsIntegralAndDualIsInvolutive) {
  Gen g(3);
  for (int t = 0; t < 20; ++t) {
    QMatrix b(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = g.rational(-3, 3, 4);
    if (b.determinant() == 0) continue;
    const IntLattice l(b);
    const IntLattice d = dual_lattice(l);
    EXPECT_TRUE((d.basis().transpose() * l.basis()) == QMatrix::identity(2));
    EXPECT_TRUE(dual_lattice(d) == l);
  }
}

TEST(PositiveDefinite, SylvesterAgreesWithCholesky) {
  Gen g(21);
  int pd = 0;
  for (int t = 0; t < 200; ++t) {
    QMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) m(i, j) = m(j, i) = g.rational(-2, 3, 4);
    bool chol = true;
    try {
      ldl_factor(m);
    } catch (const Error&) {
      chol = false;
    }
    EXPECT_EQ(positive_definite(m), chol);
    pd += chol ? 1 : 0;
  }
  EXPECT_GT(pd, 0);
  EXPECT_THROW(positive_definite(QMatrix{{1, 2}, {0, 1}}), Error);
}

TEST(Ellipsoid, EnumerationMatchesBruteForce) {
  Gen g(4);
  const QMatrix m{{2, 1}, {1, 3}};
  for (int t = 0; t < 10; ++t) {
    const QVector c = g.vector(2, -2, 2);
    const Rational bound = g.rational(0, 6);
    std::set<std::pair<long, long>> seen;
    for_each_point_in_ellipsoid(m, c, bound, [&](const std::vector<Integer>& z) {
      seen.insert({z[0].get_si(), z[1].get_si()});
    });
    std::set<std::pair<long, long>> brute;
    for (long x = -12; x <= 12; ++x)
      for (long y = -12; y <= 12; ++y) {
        const QVector d{Rational(x) - c[0], Rational(y) - c[1]};
        if (quadratic_form(m, d) <= bound) brute.insert({x, y});
      }
    EXPECT_EQ(seen, brute);
  }
}

TEST(Polytope, SquareFromConstraintsAndVertices) {
  const Polytope sq = box_polytope({0, 0}, {1, 1});
  EXPECT_EQ(sq.dim(), 2);
  EXPECT_EQ(sq.vertices().size(), 4u);
  EXPECT_EQ(sq.inequalities().size(), 4u);
  const Polytope tri = Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}, {make_rational(1, 4), make_rational(1, 4)}});
  EXPECT_EQ(tri.vertices().size(), 3u);
  EXPECT_TRUE(sq.contains(tri));
  const Polytope seg = Polytope::from_vertices(2, {{0, 0}, {1, 1}});
  EXPECT_EQ(seg.dim(), 1);
  EXPECT_EQ(seg.equalities().size(), 1u);
  EXPECT_EQ(seg.intersect(Polytope::from_vertices(2, {{0, 1}, {1, 0}})).vertices(),
            (std::vector<QVector>{{make_rational(1, 2), make_rational(1, 2)}}));
  EXPECT_TRUE(seg.intersect(seg.translated({2, 0})).is_empty());
}
