#pragma once

// Transversality and set-theoretic intersection of complexes on a torus,
// first-order motion of cells under a change of the coset constants, and
// emptiness of total intersections.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropcob/complex.hpp"

namespace tropcob {

struct TransversalityViolation {
  std::size_t cell1 = 0;
  std::size_t cell2 = 0;
  QVector point;      ///< a common point (vertex of the intersection)
  std::size_t defect = 0;  ///< n - dim(T S1 + T S2)
};

struct TransversalityReport {
  bool pass = true;
  std::vector<TransversalityViolation> violations;
};

namespace detail {

struct PeriodBox {
  std::vector<Rational> lo, hi;
};

inline PeriodBox period_box(const TropicalComplex& cx, const Polytope& p) {
  PeriodBox b;
  const std::size_t n = cx.ambient_dim();
  b.lo.assign(n, Rational(0));
  b.hi.assign(n, Rational(0));
  bool first = true;
  for (const auto& v : p.vertices()) {
    const QVector t = cx.periodic() ? cx.torus()->periods().coordinates(v) : v;
    for (std::size_t i = 0; i < n; ++i) {
      if (first || t[i] < b.lo[i]) b.lo[i] = t[i];
      if (first || t[i] > b.hi[i]) b.hi[i] = t[i];
    }
    first = false;
  }
  return b;
}

// Visits every nonempty a ∩ (b + period(shift)) over cells a of c1, b of c2 and
// lattice translates whose bounding boxes in period coordinates overlap.
inline void for_each_meeting(
    const TropicalComplex& c1, const TropicalComplex& c2,
    const std::function<void(std::size_t, std::size_t, const std::vector<Integer>&, const Polytope&)>& fn) {
  if (c1.ambient_dim() != c2.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "complexes in different dimensions");
  if (c1.periodic() != c2.periodic() || (c1.periodic() && !(*c1.torus() == *c2.torus())))
    throw Error(ErrorKind::TorusMismatch, "complexes live on different tori");
  const std::size_t n = c1.ambient_dim();
  std::vector<PeriodBox> b1, b2;
  for (const auto& c : c1.cells()) b1.push_back(period_box(c1, c.shape));
  for (const auto& c : c2.cells()) b2.push_back(period_box(c2, c.shape));
  for (std::size_t a = 0; a < c1.size(); ++a)
    for (std::size_t b = 0; b < c2.size(); ++b) {
      std::vector<Integer> lo(n), hi(n);
      bool none = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (c1.periodic()) {
          lo[i] = ceil_of(b1[a].lo[i] - b2[b].hi[i]);
          hi[i] = floor_of(b1[a].hi[i] - b2[b].lo[i]);
        } else {
          lo[i] = hi[i] = 0;
          if (b1[a].hi[i] < b2[b].lo[i] || b2[b].hi[i] < b1[a].lo[i]) none = true;
        }
        if (lo[i] > hi[i]) none = true;
      }
      if (none) continue;
      std::vector<Integer> g = lo;
      while (true) {
        const Polytope moved = c2.cell(b).shape.translated(c1.periodic() ? c1.period(g) : zero_vector(n));
        const Polytope meet = c1.cell(a).shape.intersect(moved);
        if (!meet.is_empty()) fn(a, b, g, meet);
        std::size_t i = 0;
        for (; i < n; ++i) {
          if (g[i] < hi[i]) {
            ++g[i];
            break;
          }
          g[i] = lo[i];
        }
        if (i == n) break;
      }
    }
}

inline std::size_t span_sum_dim(const Polytope& a, const Polytope& b) {
  std::vector<QVector> t = a.tangent();
  t.insert(t.end(), b.tangent().begin(), b.tangent().end());
  return span_dimension(t);
}

}  // namespace detail

inline TransversalityReport check_transverse(const TropicalComplex& c1, const TropicalComplex& c2) {
  TransversalityReport rep;
  const std::size_t n = c1.ambient_dim();
  detail::for_each_meeting(c1, c2, [&](std::size_t a, std::size_t b, const std::vector<Integer>&, const Polytope& meet) {
    const std::size_t d = detail::span_sum_dim(c1.cell(a).shape, c2.cell(b).shape);
    if (d < n) rep.violations.push_back({a, b, meet.vertices().front(), n - d});
  });
  rep.pass = rep.violations.empty();
  return rep;
}

/// Index of the sublattice spanned by Lambda_2 cap T a and Lambda_2 cap T b (0 if not full rank).
inline Integer tangent_sum_index(const TropicalComplex& cx, const Polytope& a, const Polytope& b) {
  auto ka = detail::integral_tangent_basis(cx, a);
  const auto kb = detail::integral_tangent_basis(cx, b);
  ka.insert(ka.end(), kb.begin(), kb.end());
  const std::size_t n = cx.ambient_dim();
  if (ka.size() < n) return 0;
  ZMatrix m(n, ka.size());
  for (std::size_t j = 0; j < ka.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = ka[j][i];
  Integer idx = 1;
  const auto diag = smith_normal_form(m).diagonal();
  for (const auto& d : diag) idx *= d;
  return abs(idx);
}

inline TropicalComplex intersect_complexes(const TropicalComplex& c1, const TropicalComplex& c2) {
  if (!check_transverse(c1, c2).pass) throw Error(ErrorKind::NotTransverse, "complexes do not meet transversely");
  const int n = static_cast<int>(c1.ambient_dim());
  const int top = c1.pure_dim() + c2.pure_dim() - n;
  TropicalComplex out = c1.periodic() ? TropicalComplex(*c1.torus(), top) : TropicalComplex(c1.ambient_dim(), top);
  detail::for_each_meeting(c1, c2, [&](std::size_t a, std::size_t b, const std::vector<Integer>&, const Polytope& meet) {
    const auto& ca = c1.cell(a);
    const auto& cb = c2.cell(b);
    const auto [id, shift] = out.add(meet, {});
    if (ca.dim() == c1.pure_dim() && cb.dim() == c2.pure_dim() && ca.weight > 0 && cb.weight > 0) {
      out.cells()[id].weight = ca.weight * cb.weight * tangent_sum_index(c1, ca.shape, cb.shape);
    }
    if (ca.boundary || cb.boundary) out.cells()[id].boundary = true;
  });
  return out;
}

/// Every cell lies in the dimension of the complex and is contained in a top-dimensional cell.
inline bool pure_dimension_audit(const TropicalComplex& cx) {
  const auto tops = cx.cells_of_dim(cx.pure_dim());
  TropicalComplex top_only = cx.periodic() ? TropicalComplex(*cx.torus(), cx.pure_dim())
                                           : TropicalComplex(cx.ambient_dim(), cx.pure_dim());
  for (auto t : tops) top_only.add(cx.cell(t).shape, {});
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const auto& c = cx.cell(i);
    if (c.dim() > cx.pure_dim()) return false;
    if (c.dim() == cx.pure_dim()) continue;
    TropicalComplex single = cx.periodic() ? TropicalComplex(*cx.torus(), c.dim())
                                           : TropicalComplex(cx.ambient_dim(), c.dim());
    single.add(c.shape, {});
    bool inside = false;
    const Polytope& piece = single.cell(0).shape;
    detail::for_each_meeting(top_only, single, [&](std::size_t, std::size_t, const std::vector<Integer>& g, const Polytope& meet) {
      if (meet == piece.translated(single.period(g))) inside = true;
    });
    if (!inside) return false;
  }
  return true;
}

/// First-order motion of a cell when the term constants move along `dprime`:
/// minimum-norm dv with (a_s - a_0) . dv = -(d'_s - d'_0) over the active terms.
inline QVector delta_direction_terms(const std::vector<QVector>& active, const std::vector<Rational>& dprime) {
  if (active.empty()) throw Error(ErrorKind::DimensionMismatch, "cell has no active terms");
  if (dprime.size() != active.size()) throw Error(ErrorKind::DimensionMismatch, "one direction entry per term");
  const std::size_t n = active.front().size();
  if (active.size() == 1) return zero_vector(n);
  std::vector<QVector> rows;
  QVector rhs;
  for (std::size_t s = 1; s < active.size(); ++s) {
    rows.push_back(active[s] - active[0]);
    rhs.push_back(-(dprime[s] - dprime[0]));
  }
  // restrict to an independent set of equations
  QMatrix a = QMatrix::from_rows(rows);
  QMatrix aug(rows.size(), n + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = rows[i][j];
    aug(i, n) = rhs[i];
  }
  if (aug.rank() != a.rank()) throw Error(ErrorKind::MalformedComplex, "tie equations are inconsistent");
  std::vector<QVector> ind_rows;
  QVector ind_rhs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<QVector> trial = ind_rows;
    trial.push_back(rows[i]);
    if (span_dimension(trial) > ind_rows.size()) {
      ind_rows.push_back(rows[i]);
      ind_rhs.push_back(rhs[i]);
    }
  }
  const QMatrix m = QMatrix::from_rows(ind_rows);
  const QMatrix mt = m.transpose();
  return mt * ((m * mt).inverse() * ind_rhs);
}

/// Same, for a cell of the corner locus of a theta function; `dprime` has one entry per coset.
inline QVector delta_direction(const TropicalComplex& cx, std::size_t cell, const CosetSystem& cs,
                               const std::vector<Rational>& dprime) {
  if (dprime.size() != cs.size()) throw Error(ErrorKind::DimensionMismatch, "one direction entry per coset");
  const auto& c = cx.cell(cell);
  std::vector<Rational> d;
  for (const auto& a : c.active) d.push_back(dprime[cs.index_of(a)]);
  return delta_direction_terms(c.active, d);
}

inline std::string sign_string(std::size_t bits, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back((bits >> i) & 1U ? '-' : '+');
  return s;
}

/// For each sign vector s, whether the intersection over i of V(f_i^{s_i}) is empty.
inline std::map<std::string, bool> verify_empty_total_intersection(
    const std::vector<std::pair<TropicalComplex, TropicalComplex>>& groups) {
  std::map<std::string, bool> out;
  const std::size_t m = groups.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
    TropicalComplex acc;
    bool empty = false;
    for (std::size_t i = 0; i < m && !empty; ++i) {
      const TropicalComplex& h = (bits >> i) & 1U ? groups[i].second : groups[i].first;
      acc = i == 0 ? h : intersect_complexes(acc, h);
      empty = acc.empty();
    }
    out[sign_string(bits, m)] = empty;
  }
  return out;
}

}  // namespace tropcob
