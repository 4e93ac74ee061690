#pragma once

// Bounded convex polytopes in Q^n with both a vertex list and a halfspace
// description. Vertex enumeration is brute force over tight subsets, which
// is fine for the small dimensions (n <= 3) and constraint counts used here.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include "tropcob/rational.hpp"

namespace tropcob {

/// a . v >= b  (inequality)   or   a . v == b  (equality)
struct AffineConstraint {
  QVector a;
  Rational b;

  Rational slack(const QVector& v) const { return dot(a, v) - b; }
};

namespace detail {

// Visits every k-subset of {0..m-1}; stops early when `fn` returns false.
inline void for_each_subset(std::size_t m, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Scale a nonzero rational vector so its first nonzero entry is +-1.
inline QVector normalize_leading(QVector v, Rational& rhs) {
  for (const auto& x : v)
    if (x != 0) {
      const Rational s = 1 / abs(x);
      for (auto& y : v) y *= s;
      rhs *= s;
      break;
    }
  return v;
}

}  // namespace detail

class Polytope {
 public:
  Polytope() = default;

  static Polytope empty(std::size_t n) {
    Polytope p;
    p.n_ = n;
    return p;
  }

  /// Convex hull of finitely many points.
  static Polytope from_vertices(std::size_t n, std::vector<QVector> pts) {
    Polytope p;
    p.n_ = n;
    std::sort(pts.begin(), pts.end(), QVectorLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) return p;
    const QVector& p0 = pts.front();

    std::vector<QVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - p0);
    QMatrix dm = diffs.empty() ? QMatrix(0, n) : QMatrix::from_rows(diffs);
    const auto piv = dm.rref_in_place();
    for (std::size_t i = 0; i < piv.size(); ++i) p.tangent_.push_back(dm.row(i));
    p.pivots_ = piv;
    const std::size_t d = piv.size();

    // affine hull equations
    const QMatrix tangent = d ? QMatrix::from_rows(p.tangent_) : QMatrix(0, n);
    std::vector<QVector> normals;
    if (d == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        normals.push_back(e);
      }
    } else {
      normals = tangent.nullspace();
    }
    for (auto& eta : normals) p.equalities_.push_back({eta, dot(eta, p0)});

    // facets inside the hull, computed on pivot coordinates
    std::vector<QVector> tp;
    for (const auto& q : pts) {
      QVector t(d);
      for (std::size_t i = 0; i < d; ++i) t[i] = q[piv[i]] - p0[piv[i]];
      tp.push_back(std::move(t));
    }
    std::vector<std::pair<QVector, Rational>> facets;
    auto add_facet = [&](QVector a, Rational b) {
      a = detail::normalize_leading(std::move(a), b);
      for (const auto& f : facets)
        if (f.first == a && f.second == b) return;
      facets.emplace_back(std::move(a), std::move(b));
    };
    if (d == 1) {
      Rational lo = tp.front()[0], hi = tp.front()[0];
      for (const auto& t : tp) {
        lo = std::min(lo, t[0]);
        hi = std::max(hi, t[0]);
      }
      add_facet({Rational(1)}, lo);
      add_facet({Rational(-1)}, -hi);
    } else if (d >= 2) {
      detail::for_each_subset(tp.size(), d, [&](const std::vector<std::size_t>& s) {
        std::vector<QVector> rows;
        for (std::size_t i = 1; i < s.size(); ++i) rows.push_back(tp[s[i]] - tp[s[0]]);
        const auto ns = QMatrix::from_rows(rows).nullspace();
        if (ns.size() != 1) return true;
        QVector a = ns.front();
        Rational b = dot(a, tp[s[0]]);
        bool pos = false, neg = false;
        for (const auto& t : tp) {
          const Rational v = dot(a, t) - b;
          if (v > 0) pos = true;
          if (v < 0) neg = true;
        }
        if (pos && neg) return true;
        if (neg) {
          a = -a;
          b = -b;
        }
        add_facet(std::move(a), std::move(b));
        return true;
      });
    }
    for (auto& [a, b] : facets) {
      QVector full(n, Rational(0));
      for (std::size_t i = 0; i < d; ++i) full[piv[i]] = a[i];
      const Rational rhs = b + dot(full, p0);
      p.inequalities_.push_back({std::move(full), rhs});
    }
    p.vertices_ = std::move(pts);
    // drop points that are not extreme
    if (d >= 1) {
      std::vector<QVector> extreme;
      for (const auto& v : p.vertices_) {
        std::size_t tight = 0;
        std::vector<QVector> normals_tight;
        for (const auto& c : p.inequalities_)
          if (c.slack(v) == 0) normals_tight.push_back(c.a);
        tight = span_dimension(normals_tight);
        if (tight == d) extreme.push_back(v);
      }
      p.vertices_ = std::move(extreme);
    }
    return p;
  }

  /// Polytope cut out by equalities and inequalities. Must be bounded.
  static Polytope from_constraints(std::size_t n, const std::vector<AffineConstraint>& eqs,
                                   const std::vector<AffineConstraint>& ineqs) {
    QVector base(n, Rational(0));
    std::vector<QVector> dirs;
    if (!eqs.empty()) {
      QMatrix e(eqs.size(), n);
      QVector rhs(eqs.size());
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) e(i, j) = eqs[i].a[j];
        rhs[i] = eqs[i].b;
      }
      auto sol = e.solve(rhs);
      if (!sol) return empty(n);
      base = *sol;
      dirs = e.nullspace();
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        dirs.push_back(e);
      }
    }
    const std::size_t d = dirs.size();

    // restrict inequalities to the parameter space v = base + sum t_i dirs_i
    std::vector<QVector> rows;
    std::vector<Rational> rhs;
    for (const auto& c : ineqs) {
      QVector r(d);
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        r[i] = dot(c.a, dirs[i]);
        if (r[i] != 0) nonzero = true;
      }
      const Rational b = c.b - dot(c.a, base);
      if (!nonzero) {
        if (b > 0) return empty(n);
        continue;
      }
      rows.push_back(std::move(r));
      rhs.push_back(b);
    }
    auto feasible = [&](const QVector& t) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (dot(rows[i], t) < rhs[i]) return false;
      return true;
    };
    auto lift = [&](const QVector& t) {
      QVector v = base;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) v[j] += t[i] * dirs[i][j];
      return v;
    };

    std::vector<QVector> verts;
    if (d == 0) {
      if (feasible({})) verts.push_back(base);
    } else {
      std::set<QVector, QVectorLess> seen;
      detail::for_each_subset(rows.size(), d, [&](const std::vector<std::size_t>& s) {
        QMatrix a(d, d);
        QVector b(d);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) a(i, j) = rows[s[i]][j];
          b[i] = rhs[s[i]];
        }
        if (a.determinant() == 0) return true;
        const QVector t = *a.solve(b);
        if (feasible(t) && seen.insert(t).second) verts.push_back(lift(t));
        return true;
      });
    }
    return from_vertices(n, std::move(verts));
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  bool is_empty() const noexcept { return vertices_.empty(); }
  /// -1 for the empty polytope.
  int dim() const noexcept { return is_empty() ? -1 : static_cast<int>(tangent_.size()); }

  const std::vector<QVector>& vertices() const noexcept { return vertices_; }
  const std::vector<AffineConstraint>& equalities() const noexcept { return equalities_; }
  const std::vector<AffineConstraint>& inequalities() const noexcept { return inequalities_; }
  /// Basis of the tangent space of the affine hull.
  const std::vector<QVector>& tangent() const noexcept { return tangent_; }

  QVector barycenter() const {
    QVector c(n_, Rational(0));
    for (const auto& v : vertices_) c = c + v;
    return Rational(1, static_cast<long>(vertices_.size())) * c;
  }

  bool contains(const QVector& v) const {
    if (is_empty()) return false;
    for (const auto& c : equalities_)
      if (c.slack(v) != 0) return false;
    for (const auto& c : inequalities_)
      if (c.slack(v) < 0) return false;
    return true;
  }

  /// True when every vertex of `other` lies in this polytope.
  bool contains(const Polytope& other) const {
    for (const auto& v : other.vertices())
      if (!contains(v)) return false;
    return !other.is_empty();
  }

  Polytope translated(const QVector& shift) const {
    Polytope p = *this;
    for (auto& v : p.vertices_) v = v + shift;
    for (auto& c : p.equalities_) c.b += dot(c.a, shift);
    for (auto& c : p.inequalities_) c.b += dot(c.a, shift);
    return p;
  }

  Polytope intersect(const Polytope& o) const {
    if (is_empty() || o.is_empty()) return empty(n_);
    std::vector<AffineConstraint> eqs = equalities_;
    eqs.insert(eqs.end(), o.equalities_.begin(), o.equalities_.end());
    std::vector<AffineConstraint> ineqs = inequalities_;
    ineqs.insert(ineqs.end(), o.inequalities_.begin(), o.inequalities_.end());
    return from_constraints(n_, eqs, ineqs);
  }

  bool operator==(const Polytope& o) const { return n_ == o.n_ && vertices_ == o.vertices_; }

 private:
  std::size_t n_ = 0;
  std::vector<QVector> vertices_;
  std::vector<QVector> tangent_;
  std::vector<std::size_t> pivots_;
  std::vector<AffineConstraint> equalities_;
  std::vector<AffineConstraint> inequalities_;
};

/// Axis-aligned box [lo_i, hi_i].
inline Polytope box_polytope(const QVector& lo, const QVector& hi) {
  const std::size_t n = lo.size();
  std::vector<AffineConstraint> ineqs;
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n, Rational(0));
    e[i] = 1;
    ineqs.push_back({e, lo[i]});
    ineqs.push_back({-e, -hi[i]});
  }
  return Polytope::from_constraints(n, {}, ineqs);
}

}  // namespace tropcob
