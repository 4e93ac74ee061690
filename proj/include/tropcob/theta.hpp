#pragma once

// Quasi-periodic tropical theta functions
//
//   f_{k,delta}(u) = max_{alpha in Lambda_2^vee} alpha(u) - |alpha^#|^2 / 2k + delta(alpha)
//
// and their translates f_{k,delta,w}(v) = f_{k,delta}(v + w).
//
// Writing x = k G u, each term equals (k/2)|u|^2 + delta(alpha) - Q(alpha)/2k
// with Q(alpha) = (alpha - x)^T G^{-1} (alpha - x). Maximising is therefore a
// weighted closest-vector problem, and every evaluation enumerates the exact
// set of covectors inside the ellipsoid that can still beat a Babai point.
// That enumeration is the dominance certificate: anything outside it scores
// strictly less.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropcob/ellipsoid.hpp"
#include "tropcob/polytope.hpp"
#include "tropcob/torus.hpp"

namespace tropcob {

struct DeltaFunction {
  CosetSystem cosets;
  std::vector<Rational> values;  ///< one per coset representative

  const Rational& operator()(const QVector& alpha) const { return values[cosets.index_of(alpha)]; }
  Rational max() const { return *std::max_element(values.begin(), values.end()); }
  Rational min() const { return *std::min_element(values.begin(), values.end()); }
};

inline DeltaFunction make_delta(const CosetSystem& cs, std::vector<Rational> values) {
  if (values.size() != cs.size()) throw Error(ErrorKind::DimensionMismatch, "delta needs one value per coset");
  return DeltaFunction{cs, std::move(values)};
}

inline DeltaFunction zero_delta(const CosetSystem& cs) { return DeltaFunction{cs, std::vector<Rational>(cs.size(), Rational(0))}; }

/// Region of V where one coset representative's term is maximal (for f_{k,delta}, w = 0).
struct DominanceCell {
  std::size_t coset = 0;
  QVector alpha;
  std::vector<QVector> competitors;  ///< every covector that can tie with alpha on the cell
  Polytope region;                   ///< empty when alpha never strictly dominates
};

struct Evaluation {
  Rational value;
  std::vector<QVector> active;  ///< all maximisers, lexicographically sorted
  Rational search_radius_sq;    ///< Q-bound of the certified enumeration
  std::size_t candidates = 0;
};

class ThetaFunction {
 public:
  ThetaFunction() = default;

  const Polarization& polarization() const noexcept { return *p_; }
  const TropicalAffineTorus& torus() const noexcept { return p_->torus; }
  std::size_t dim() const noexcept { return p_->dim(); }
  long k() const noexcept { return delta_.cosets.k(); }
  const DeltaFunction& delta() const noexcept { return delta_; }
  const QVector& shift() const noexcept { return w_; }
  const std::vector<DominanceCell>& cells() const noexcept { return cells_; }
  /// Covectors whose dominance region meets the closed fundamental domain (after the shift by w).
  const std::vector<QVector>& active_terms() const noexcept { return active_terms_; }

  /// Value of the single term alpha at u (unshifted coordinates).
  Rational term(const QVector& alpha, const QVector& u) const {
    return dot(alpha, u) - p_->metric.covector_norm_sq(alpha) / (2 * Rational(k())) + delta_(alpha);
  }

  /// Exact max and argmax of f_{k,delta} at u (no shift applied).
  Evaluation evaluate_unshifted(const QVector& u) const {
    const QMatrix& basis = torus().covector_lattice().basis();
    const QVector x = Rational(k()) * p_->metric.flat(u);
    const QVector t = torus().covector_lattice().coordinates(x);
    const auto z0 = babai_point(form_, t);
    const QVector a0 = basis * to_q(z0);
    const QVector diff0 = a0 - x;
    const Rational q0 = dot(diff0, p_->metric.G_inv * diff0);
    const Rational bound = 2 * Rational(k()) * (delta_.max() - delta_(a0)) + q0;

    Evaluation ev;
    ev.search_radius_sq = bound;
    bool first = true;
    for_each_point_in_ellipsoid(form_, t, bound, [&](const std::vector<Integer>& z) {
      const QVector a = basis * to_q(z);
      const Rational val = term(a, u);
      ++ev.candidates;
      if (first || val > ev.value) {
        ev.value = val;
        ev.active.clear();
        ev.active.push_back(a);
        first = false;
      } else if (val == ev.value) {
        ev.active.push_back(a);
      }
    });
    if (first) throw std::logic_error("certified enumeration found no candidate");
    std::sort(ev.active.begin(), ev.active.end(), QVectorLess{});
    return ev;
  }

  /// f_{k,delta,w}(v) = f_{k,delta}(v + w).
  Evaluation evaluate(const QVector& v) const { return evaluate_unshifted(v + w_); }
  Rational operator()(const QVector& v) const { return evaluate(v).value; }

  friend ThetaFunction make_theta(const Polarization& p, long k, const DeltaFunction& delta, const QVector& w);

 private:
  static QVector to_q(const std::vector<Integer>& z) {
    QVector q;
    for (const auto& x : z) q.emplace_back(x);
    return q;
  }

  void build_cells();
  void build_active_terms();

  std::shared_ptr<const Polarization> p_;
  DeltaFunction delta_;
  QVector w_;
  QMatrix form_;  ///< G^{-1} in covector-lattice coordinates
  std::vector<DominanceCell> cells_;
  std::vector<QVector> active_terms_;
};

inline void ThetaFunction::build_cells() {
  const std::size_t n = dim();
  const QMatrix& basis = torus().covector_lattice().basis();
  const Rational two_k = 2 * Rational(k());
  // any maximiser at u lies within Q <= spread + rho^2 of x = k G u
  const Rational reach = two_k * (delta_.max() - delta_.min()) + covering_radius_sq_bound(form_);
  const Rational neighbour_bound = 4 * reach;

  for (std::size_t r = 0; r < delta_.cosets.size(); ++r) {
    DominanceCell cell;
    cell.coset = r;
    cell.alpha = delta_.cosets.representatives()[r];
    const QVector t = torus().covector_lattice().coordinates(cell.alpha);
    std::vector<AffineConstraint> ineqs;
    const Rational self = p_->metric.covector_norm_sq(cell.alpha) / two_k - delta_(cell.alpha);
    for_each_point_in_ellipsoid(form_, t, neighbour_bound, [&](const std::vector<Integer>& z) {
      const QVector beta = basis * to_q(z);
      if (beta == cell.alpha) return;
      cell.competitors.push_back(beta);
      const Rational other = p_->metric.covector_norm_sq(beta) / two_k - delta_(beta);
      ineqs.push_back({cell.alpha - beta, self - other});
    });
    std::sort(cell.competitors.begin(), cell.competitors.end(), QVectorLess{});
    Polytope region = Polytope::from_constraints(n, {}, ineqs);

    // soundness: alpha must be the unique maximiser at the barycenter and a maximiser at each vertex
    if (region.dim() == static_cast<int>(n)) {
      const auto centre = evaluate_unshifted(region.barycenter());
      if (centre.active.size() == 1 && centre.active.front() == cell.alpha) {
        for (const auto& v : region.vertices()) {
          const auto ev = evaluate_unshifted(v);
          if (!std::binary_search(ev.active.begin(), ev.active.end(), cell.alpha, QVectorLess{}) ||
              ev.value != term(cell.alpha, v)) {
            throw std::logic_error("dominance cell failed its certificate");
          }
        }
        cell.region = std::move(region);
      } else {
        cell.region = Polytope::empty(n);
      }
    } else {
      cell.region = Polytope::empty(n);
    }
    cells_.push_back(std::move(cell));
  }
}

inline void ThetaFunction::build_active_terms() {
  const std::size_t n = dim();
  const IntLattice& periods = torus().periods();
  std::vector<QVector> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    QVector t(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) t[i] = 1;
    corners.push_back(periods.basis() * t);
  }
  const Polytope domain = Polytope::from_vertices(n, corners);
  std::set<QVector, QVectorLess> terms;
  for (const auto& cell : cells_) {
    if (cell.region.is_empty()) continue;
    // cell of alpha + k c(gamma) is region + gamma; in v-coordinates it is shifted by -w
    const Polytope base = cell.region.translated(-w_);
    std::vector<Rational> lo(n), hi(n);
    bool first = true;
    for (const auto& v : base.vertices()) {
      const QVector c = periods.coordinates(v);
      for (std::size_t i = 0; i < n; ++i) {
        if (first || c[i] < lo[i]) lo[i] = c[i];
        if (first || c[i] > hi[i]) hi[i] = c[i];
      }
      first = false;
    }
    std::vector<Integer> from(n), to(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      from[i] = ceil_of(-hi[i]);
      to[i] = floor_of(1 - lo[i]);
      g[i] = from[i];
    }
    while (true) {
      const QVector gamma = torus().period(g);
      if (!base.translated(gamma).intersect(domain).is_empty()) {
        terms.insert(cell.alpha + Rational(k()) * p_->apply(gamma));
      }
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (g[i] < to[i]) {
          ++g[i];
          break;
        }
        g[i] = from[i];
      }
      if (i == n) break;
    }
  }
  active_terms_.assign(terms.begin(), terms.end());
}

/// Builds f_{k,delta,w} with its per-coset dominance cells and finite active-term presentation.
inline ThetaFunction make_theta(const Polarization& p, long k, const DeltaFunction& delta, const QVector& w) {
  if (delta.cosets.k() != k) throw Error(ErrorKind::DimensionMismatch, "delta was built for a different k");
  if (w.size() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "shift has wrong dimension");
  if (delta.values.size() != delta.cosets.size()) throw Error(ErrorKind::DimensionMismatch, "delta size");
  ThetaFunction th;
  th.p_ = std::make_shared<const Polarization>(p);
  th.delta_ = delta;
  th.w_ = w;
  const QMatrix& basis = p.torus.covector_lattice().basis();
  th.form_ = basis.transpose() * p.metric.G_inv * basis;
  th.build_cells();
  th.build_active_terms();
  return th;
}

inline Evaluation evaluate(const ThetaFunction& th, const QVector& v) { return th.evaluate(v); }

/// f(v + gamma) - f(v) - k c(gamma)(v + w) - k |gamma|^2 / 2; identically zero.
inline Rational quasi_period_residual(const ThetaFunction& th, const QVector& gamma, const QVector& v) {
  if (!th.torus().periods().contains(gamma)) throw Error(ErrorKind::NotAPeriod, "gamma is not a period");
  const Polarization& p = th.polarization();
  const Rational k(th.k());
  const Rational lhs = th(v + gamma) - th(v);
  return lhs - k * dot(p.apply(gamma), v + th.shift()) - k * p.metric.norm_sq(gamma) / 2;
}

/// Linear function v -> alpha(v) + b, taken modulo integral affine functions.
struct AffineFunctionClass {
  QVector alpha;
  Rational b;

  Rational operator()(const QVector& v) const { return dot(alpha, v) + b; }
};

/// True when the two classes agree modulo integral affine functions (alpha mod Lambda_2^vee).
inline bool same_class(const TropicalAffineTorus& t, const AffineFunctionClass& a, const AffineFunctionClass& b) {
  return t.covector_lattice().contains(a.alpha - b.alpha);
}

struct NormVectors {
  QVector w_plus;
  QVector w_minus;
  bool affine_trivial = false;
};

/// w_+- with k c(w_+ - w_-) = alpha and (k/2)(|w_+|^2 - |w_-|^2) = b.
/// Symmetric split: d = (k c)^{-1} alpha, w_+- = s +- d/2 with s parallel to d.
inline NormVectors linear_to_norm_vectors(const Polarization& p, long k, const AffineFunctionClass& cls) {
  if (k < 1) throw Error(ErrorKind::DimensionMismatch, "k must be positive");
  const std::size_t n = p.dim();
  if (cls.alpha.size() != n) throw Error(ErrorKind::DimensionMismatch, "class covector has wrong dimension");
  const Rational kk(k);
  const QVector d = (1 / kk) * p.metric.sharp(cls.alpha);
  if (is_zero(d)) return {zero_vector(n), zero_vector(n), true};
  const QVector s = (cls.b / (kk * p.metric.norm_sq(d))) * d;
  const QVector half = Rational(1, 2) * d;
  return {s + half, s - half, false};
}

struct TropicalRationalFn {
  ThetaFunction plus;
  ThetaFunction minus;

  Rational operator()(const QVector& v) const { return plus(v) - minus(v); }
};

struct ClassCheck {
  bool ok = true;
  std::optional<std::size_t> first_violation;  ///< index into the sample list
  Rational defect;                              ///< nonzero residual at the violation
};

struct PeriodSample {
  QVector v;
  QVector gamma;
};

/// Checks that Phi - (alpha(.) + b) is Lambda_1-periodic at every sample.
inline ClassCheck verify_class_equality(const TropicalRationalFn& phi, const AffineFunctionClass& cls,
                                        const std::vector<PeriodSample>& samples) {
  const IntLattice& periods = phi.plus.torus().periods();
  ClassCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!periods.contains(s.gamma)) throw Error(ErrorKind::NotAPeriod, "sample shift is not a period");
    const Rational diff = (phi(s.v + s.gamma) - cls(s.v + s.gamma)) - (phi(s.v) - cls(s.v));
    if (diff != 0) {
      out.ok = false;
      out.first_violation = i;
      out.defect = diff;
      return out;
    }
  }
  return out;
}

/// Phi = f_{k,delta_+,w_+} - f_{k,delta_-,w_-} representing the class of a linear function.
inline TropicalRationalFn section_to_rational_fn(const Polarization& p, long k, const AffineFunctionClass& cls,
                                                 const DeltaFunction& delta_plus, const DeltaFunction& delta_minus) {
  const NormVectors w = linear_to_norm_vectors(p, k, cls);
  TropicalRationalFn phi{make_theta(p, k, delta_plus, w.w_plus), make_theta(p, k, delta_minus, w.w_minus)};
  std::vector<PeriodSample> samples;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    samples.push_back({zero_vector(p.dim()), p.torus.periods().generator(j)});
  }
  if (!verify_class_equality(phi, cls, samples).ok) throw std::logic_error("rational function has the wrong class");
  return phi;
}

}  // namespace tropcob
