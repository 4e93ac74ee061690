#pragma once

// Corner loci of piecewise-linear envelopes as weighted polyhedral complexes,
// either periodic on a torus or clipped to a box in an affine chart.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropcob/theta.hpp"

namespace tropcob {

/// Face `id`, translated by the period with the given coordinates, is a face of the owning cell.
struct FaceRef {
  std::size_t id = 0;
  std::vector<Integer> shift;

  bool operator<(const FaceRef& o) const { return std::tie(id, shift) < std::tie(o.id, o.shift); }
  bool operator==(const FaceRef& o) const { return id == o.id && shift == o.shift; }
};

struct PolyCell {
  Polytope shape;               ///< canonical representative
  std::vector<QVector> active;  ///< terms achieving the max on the relative interior
  Integer weight = 0;           ///< set on top-dimensional cells
  bool boundary = false;        ///< clipped by the chart box (affine complexes only)
  std::vector<FaceRef> faces;   ///< codimension-one faces of this cell

  int dim() const { return shape.dim(); }
};

class TropicalComplex {
 public:
  TropicalComplex() = default;

  /// Periodic complex on a torus.
  TropicalComplex(TropicalAffineTorus torus, int pure_dim)
      : n_(torus.dim()), pure_dim_(pure_dim), torus_(std::move(torus)) {}

  /// Complex in an affine chart R^n with the standard lattices.
  TropicalComplex(std::size_t n, int pure_dim) : n_(n), pure_dim_(pure_dim) {}

  std::size_t ambient_dim() const noexcept { return n_; }
  int pure_dim() const noexcept { return pure_dim_; }
  bool periodic() const noexcept { return torus_.has_value(); }
  const std::optional<TropicalAffineTorus>& torus() const noexcept { return torus_; }

  const std::vector<PolyCell>& cells() const noexcept { return cells_; }
  std::vector<PolyCell>& cells() noexcept { return cells_; }
  const PolyCell& cell(std::size_t i) const { return cells_.at(i); }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  std::vector<std::size_t> cells_of_dim(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].dim() == d) out.push_back(i);
    return out;
  }

  /// Integral tangent vectors (Lambda_2, or Z^n in a chart).
  QMatrix tangent_basis() const { return torus_ ? torus_->tangent_lattice().basis() : QMatrix::identity(n_); }
  /// Integral covectors (Lambda_2^vee, or Z^n in a chart).
  QMatrix covector_basis() const { return torus_ ? torus_->covector_lattice().basis() : QMatrix::identity(n_); }

  QVector period(const std::vector<Integer>& shift) const {
    if (!torus_ || shift.empty()) return zero_vector(n_);
    return torus_->period(shift);
  }

  /// Inserts a cell (after reduction to its canonical representative) and returns its id and
  /// the period shift s with original = canonical + period(s).
  std::pair<std::size_t, std::vector<Integer>> add(Polytope shape, std::vector<QVector> active,
                                                    const QMatrix* covector_shift = nullptr) {
    std::vector<Integer> s;
    if (torus_) {
      s = torus_->fundamental_shift(shape.barycenter());
      const QVector g = torus_->period(s);
      if (!is_zero(g)) {
        shape = shape.translated(-g);
        if (covector_shift) {
          const QVector dc = (*covector_shift) * g;
          for (auto& a : active) a = a - dc;
        }
      }
    }
    std::sort(active.begin(), active.end(), QVectorLess{});
    const auto it = index_.find(shape.vertices());
    if (it != index_.end()) return {it->second, s};
    const std::size_t id = cells_.size();
    index_.emplace(shape.vertices(), id);
    cells_.push_back(PolyCell{std::move(shape), std::move(active), 0, false, {}});
    return {id, s};
  }

  std::optional<std::size_t> find(const std::vector<QVector>& canonical_vertices) const {
    const auto it = index_.find(canonical_vertices);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void add_face(std::size_t owner, FaceRef ref) {
    auto& f = cells_.at(owner).faces;
    if (std::find(f.begin(), f.end(), ref) == f.end()) f.push_back(std::move(ref));
  }

 private:
  std::size_t n_ = 0;
  int pure_dim_ = -1;
  std::optional<TropicalAffineTorus> torus_;
  std::vector<PolyCell> cells_;
  std::map<std::vector<QVector>, std::size_t> index_;
};

namespace detail {

struct RawFace {
  std::vector<std::size_t> verts;  ///< indices into the polytope's vertex list
  int dim = 0;
  std::vector<QVector> active;
};

inline int affine_dim(const std::vector<QVector>& pts) {
  if (pts.empty()) return -1;
  std::vector<QVector> d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(pts[i] - pts[0]);
  return static_cast<int>(span_dimension(d));
}

// Proper faces of a full-dimensional polytope, with the terms tied on each.
// `ties(v)` lists the terms attaining the maximum at vertex v.
template <class TieFn>
std::vector<RawFace> proper_faces(const Polytope& p, TieFn&& ties) {
  const auto& vs = p.vertices();
  std::set<std::vector<std::size_t>> sets;
  for (const auto& c : p.inequalities()) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (c.slack(vs[i]) == 0) s.push_back(i);
    if (!s.empty()) sets.insert(s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<std::size_t>> cur(sets.begin(), sets.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<std::size_t> x;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(), std::back_inserter(x));
        if (!x.empty() && sets.insert(x).second) grew = true;
      }
  }
  std::vector<std::vector<QVector>> vertex_ties;
  for (const auto& v : vs) {
    auto t = ties(v);
    std::sort(t.begin(), t.end(), QVectorLess{});
    vertex_ties.push_back(std::move(t));
  }
  std::vector<RawFace> out;
  for (const auto& s : sets) {
    RawFace f;
    f.verts = s;
    std::vector<QVector> pts;
    for (auto i : s) pts.push_back(vs[i]);
    f.dim = affine_dim(pts);
    f.active = vertex_ties[s.front()];
    for (std::size_t k = 1; k < s.size(); ++k) {
      std::vector<QVector> x;
      std::set_intersection(f.active.begin(), f.active.end(), vertex_ties[s[k]].begin(), vertex_ties[s[k]].end(),
                            std::back_inserter(x), QVectorLess{});
      f.active = std::move(x);
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline Polytope face_shape(const Polytope& p, const RawFace& f) {
  std::vector<QVector> pts;
  for (auto i : f.verts) pts.push_back(p.vertices()[i]);
  return Polytope::from_vertices(p.ambient_dim(), std::move(pts));
}

/// Lattice length of a collinear set of covectors, measured in the given lattice basis.
inline Integer lattice_length(const std::vector<QVector>& pts, const QMatrix& basis) {
  if (pts.size() < 2) return 0;
  const QMatrix inv = basis.inverse();
  QVector dir;
  for (std::size_t i = 1; i < pts.size() && dir.empty(); ++i)
    if (pts[i] != pts[0]) dir = pts[i] - pts[0];
  if (dir.empty()) return 0;
  Rational lo = 0, hi = 0;
  QVector pmin = pts[0], pmax = pts[0];
  for (const auto& q : pts) {
    const Rational t = dot(q - pts[0], dir);
    if (t < lo) {
      lo = t;
      pmin = q;
    }
    if (t > hi) {
      hi = t;
      pmax = q;
    }
  }
  std::vector<Integer> coords;
  for (const auto& c : inv * (pmax - pmin)) {
    if (!is_integer(c)) throw Error(ErrorKind::NotIntegral, "slope difference is not integral");
    coords.push_back(c.get_num());
  }
  return gcd_of(coords);
}

// Adds all proper faces of one full-dimensional region to the complex, with incidences.
template <class TieFn>
void add_region_faces(TropicalComplex& cx, const Polytope& region, TieFn&& ties, const QMatrix* covector_shift,
                      const std::vector<AffineConstraint>* box) {
  const auto faces = proper_faces(region, ties);
  std::vector<std::pair<std::size_t, std::vector<Integer>>> ids(faces.size());
  std::vector<bool> keep(faces.size(), false);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].active.size() < 2) continue;  // pure box faces are not part of the corner locus
    keep[i] = true;
    Polytope shape = face_shape(region, faces[i]);
    bool on_box = false;
    if (box) {
      for (const auto& c : *box) {
        bool all = true;
        for (const auto& v : shape.vertices())
          if (c.slack(v) != 0) all = false;
        if (all) on_box = true;
      }
    }
    ids[i] = cx.add(std::move(shape), faces[i].active, covector_shift);
    if (on_box) cx.cells()[ids[i].first].boundary = true;
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      if (!keep[j] || faces[j].dim + 1 != faces[i].dim) continue;
      if (!std::includes(faces[i].verts.begin(), faces[i].verts.end(), faces[j].verts.begin(), faces[j].verts.end()))
        continue;
      std::vector<Integer> rel;
      if (!ids[j].second.empty()) {
        for (std::size_t k = 0; k < ids[j].second.size(); ++k) rel.push_back(ids[j].second[k] - ids[i].second[k]);
      }
      cx.add_face(ids[i].first, FaceRef{ids[j].first, rel});
    }
  }
}

inline void assign_facet_weights(TropicalComplex& cx) {
  const QMatrix cov = cx.covector_basis();
  for (auto& c : cx.cells())
    if (c.dim() == cx.pure_dim()) c.weight = lattice_length(c.active, cov);
}

}  // namespace detail

/// V(f) for a theta function, as a periodic complex of pure codimension one.
inline TropicalComplex corner_locus(const ThetaFunction& th) {
  const std::size_t n = th.dim();
  TropicalComplex cx(th.torus(), static_cast<int>(n) - 1);
  const QMatrix kc = Rational(th.k()) * th.polarization().metric.G;
  for (const auto& cell : th.cells()) {
    if (cell.region.is_empty()) continue;
    const Polytope region = cell.region.translated(-th.shift());
    auto ties = [&](const QVector& v) {
      const QVector u = v + th.shift();
      const Rational top = th.term(cell.alpha, u);
      std::vector<QVector> t{cell.alpha};
      for (const auto& b : cell.competitors)
        if (th.term(b, u) == top) t.push_back(b);
      return t;
    };
    detail::add_region_faces(cx, region, ties, &kc, nullptr);
  }
  detail::assign_facet_weights(cx);
  return cx;
}

/// max_i (slope_i . x + constant_i) on R^n.
struct AffineTerm {
  QVector slope;
  Rational constant;
};

/// Corner locus of a finite family of integral affine terms, clipped to the box [lo, hi].
/// Cells touching the box are flagged `boundary` and skipped by the checkers.
inline TropicalComplex corner_locus_affine(const std::vector<AffineTerm>& terms, const QVector& lo, const QVector& hi) {
  const std::size_t n = lo.size();
  TropicalComplex cx(n, static_cast<int>(n) - 1);
  const Polytope box = box_polytope(lo, hi);
  auto value = [&](const AffineTerm& t, const QVector& x) -> Rational { return dot(t.slope, x) + t.constant; };
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<AffineConstraint> ineqs = box.inequalities();
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (j == i) continue;
      ineqs.push_back({terms[i].slope - terms[j].slope, terms[j].constant - terms[i].constant});
    }
    const Polytope region = Polytope::from_constraints(n, {}, ineqs);
    if (region.dim() != static_cast<int>(n)) continue;
    auto ties = [&](const QVector& v) {
      const Rational top = value(terms[i], v);
      std::vector<QVector> t;
      for (const auto& term : terms)
        if (value(term, v) == top && std::find(t.begin(), t.end(), term.slope) == t.end()) t.push_back(term.slope);
      return t;
    };
    detail::add_region_faces(cx, region, ties, nullptr, &box.inequalities());
  }
  detail::assign_facet_weights(cx);
  return cx;
}

inline std::pair<TropicalComplex, TropicalComplex> corner_locus_rational(const TropicalRationalFn& phi) {
  return {corner_locus(phi.plus), corner_locus(phi.minus)};
}

/// Convex hull of the differentials active at a cell.
struct InPolytope {
  std::vector<QVector> vertices;
  int dim = -1;
};

inline InPolytope dual_polytope_at(const TropicalComplex& cx, std::size_t cell) {
  const auto& c = cx.cell(cell);
  const Polytope hull = Polytope::from_vertices(cx.ambient_dim(), c.active);
  return InPolytope{hull.vertices(), hull.dim()};
}

namespace detail {

/// Annihilator of the tangent space of a polytope, as covectors.
inline std::vector<QVector> annihilator(const Polytope& p, std::size_t n) {
  return p.tangent().empty() ? QMatrix::identity(n).columns() : QMatrix::from_rows(p.tangent()).nullspace();
}

/// Basis of Lambda_2 cap T(p), in coordinates of the tangent-lattice basis.
inline std::vector<std::vector<Integer>> integral_tangent_basis(const TropicalComplex& cx, const Polytope& p) {
  const std::size_t n = cx.ambient_dim();
  if (p.dim() <= 0) return {};
  if (p.dim() == static_cast<int>(n)) {
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Integer> e(n, Integer(0));
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  return integer_kernel(QMatrix::from_rows(annihilator(p, n)) * cx.tangent_basis());
}

// Primitive vector of (Lambda_2 cap T tau) / (Lambda_2 cap T sigma) pointing from sigma into tau.
inline QVector primitive_normal(const TropicalComplex& cx, const Polytope& tau, const Polytope& sigma) {
  const std::size_t n = cx.ambient_dim();
  const QMatrix l2 = cx.tangent_basis();
  const auto kernel = integral_tangent_basis(cx, tau);
  const std::vector<QVector> ann_sigma = annihilator(sigma, n);
  std::vector<QVector> gens;
  for (const auto& z : kernel) {
    QVector q;
    for (const auto& x : z) q.emplace_back(x);
    gens.push_back(l2 * q);
  }
  for (const auto& eta : ann_sigma) {
    std::vector<Rational> vals;
    bool nonzero = false;
    for (const auto& g : gens) {
      vals.push_back(dot(eta, g));
      if (vals.back() != 0) nonzero = true;
    }
    if (!nonzero) continue;
    // extended gcd over the values (scaled to integers)
    Integer den = 1;
    for (const auto& v : vals) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> coef(vals.size(), Integer(0));
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const Integer a(vals[i] * den);
      Integer ng, s, t;
      mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
      for (auto& c : coef) c *= s;
      coef[i] = t;
      g = ng;
    }
    QVector v(n, Rational(0));
    for (std::size_t i = 0; i < gens.size(); ++i) v = v + Rational(coef[i]) * gens[i];
    const Rational dir = dot(eta, tau.barycenter() - sigma.barycenter());
    if ((dir > 0) != (dot(eta, v) > 0)) v = -v;
    return v;
  }
  throw Error(ErrorKind::MalformedComplex, "cell does not extend its face");
}

}  // namespace detail

struct BalancingReport {
  bool balanced = true;
  std::optional<std::size_t> first_failure;  ///< id of an unbalanced codimension-one face
  QVector residual;
};

inline BalancingReport balancing_report(const TropicalComplex& cx) {
  BalancingReport rep;
  const int top = cx.pure_dim();
  if (top < 1) return rep;
  // sigma -> list of (tau, translation putting tau around sigma)
  std::map<std::size_t, std::vector<std::pair<std::size_t, QVector>>> star;
  for (std::size_t t = 0; t < cx.size(); ++t) {
    const auto& tau = cx.cell(t);
    if (tau.dim() != top) continue;
    for (const auto& f : tau.faces) {
      if (f.id >= cx.size()) throw Error(ErrorKind::MalformedComplex, "face reference out of range");
      star[f.id].emplace_back(t, -cx.period(f.shift));
    }
  }
  for (std::size_t s = 0; s < cx.size(); ++s) {
    const auto& sigma = cx.cell(s);
    if (sigma.dim() != top - 1 || sigma.boundary) continue;
    QVector sum = zero_vector(cx.ambient_dim());
    for (const auto& [t, shift] : star[s]) {
      const Polytope tau = cx.cell(t).shape.translated(shift);
      if (!tau.contains(sigma.shape)) throw Error(ErrorKind::MalformedComplex, "incidence does not match geometry");
      sum = sum + Rational(cx.cell(t).weight) * detail::primitive_normal(cx, tau, sigma.shape);
    }
    const auto ann = detail::annihilator(sigma.shape, cx.ambient_dim());
    for (const auto& eta : ann)
      if (dot(eta, sum) != 0) {
        rep.balanced = false;
        rep.first_failure = s;
        rep.residual = sum;
        return rep;
      }
  }
  return rep;
}

inline bool check_balancing(const TropicalComplex& cx) { return balancing_report(cx).balanced; }

struct RegularityReport {
  bool regular = true;
  std::optional<std::size_t> first_failure;
  std::string reason;
};

inline RegularityReport regularity_report(const TropicalComplex& cx) {
  RegularityReport rep;
  const std::size_t n = cx.ambient_dim();
  const QMatrix cov = cx.covector_basis();
  const QMatrix cov_inv = cov.inverse();
  for (std::size_t id = 0; id < cx.size(); ++id) {
    const auto& c = cx.cell(id);
    if (c.boundary) continue;
    const int codim = static_cast<int>(n) - c.dim();
    auto fail = [&](std::string why) {
      rep.regular = false;
      rep.first_failure = id;
      rep.reason = std::move(why);
    };
    if (static_cast<int>(c.active.size()) != codim + 1 || detail::affine_dim(c.active) != codim) {
      fail("dual polytope is not a simplex");
      return rep;
    }
    // lattice points of the simplex, by bounding box in covector-lattice coordinates
    std::vector<QVector> coords;
    for (const auto& a : c.active) coords.push_back(cov_inv * a);
    std::vector<Integer> lo(n), hi(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = hi[i] = coords[0][i].get_num();
      for (const auto& x : coords) {
        lo[i] = std::min(lo[i], Integer(x[i].get_num()));
        hi[i] = std::max(hi[i], Integer(x[i].get_num()));
      }
      z[i] = lo[i];
    }
    // barycentric solve: sum l_j a_j = p, sum l_j = 1
    QMatrix sys(n + 1, c.active.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) sys(i, j) = coords[j][i];
      sys(n, j) = 1;
    }
    while (true) {
      QVector rhs(n + 1);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = Rational(z[i]);
      rhs[n] = 1;
      QVector zq(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
      if (auto l = sys.solve(rhs)) {
        const bool inside = std::all_of(l->begin(), l->end(), [](const Rational& x) { return x >= 0; });
        if (inside && std::find(coords.begin(), coords.end(), zq) == coords.end()) {
          fail("dual polytope contains a lattice point that is not a vertex");
          return rep;
        }
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (z[i] < hi[i]) {
          ++z[i];
          break;
        }
        z[i] = lo[i];
      }
      if (i == n) break;
    }
  }
  return rep;
}

inline bool check_regular(const TropicalComplex& cx) { return regularity_report(cx).regular; }

}  // namespace tropcob
