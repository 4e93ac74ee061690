#pragma once

// Formal algebra generated by Lagrangian torus fibers: Pontryagin product,
// augmentation, Albanese sum, the filtration generators, a symbolic Fourier
// transform on fibers and flat sections, and the vanishing check for
// (n+1)-fold generators.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropcob/perturb.hpp"

namespace tropcob {

using TorusPoint = QVector;

inline TorusPoint torus_point(const TropicalAffineTorus& t, const QVector& v) {
  if (v.size() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "point has wrong dimension");
  return t.reduce(v);
}

/// Finite integer combination of fibers, keyed by reduced base point.
class CobordismElement {
 public:
  using Terms = std::map<TorusPoint, Integer, QVectorLess>;

  explicit CobordismElement(std::shared_ptr<const TropicalAffineTorus> torus) : torus_(std::move(torus)) {}

  static CobordismElement fiber(std::shared_ptr<const TropicalAffineTorus> torus, const QVector& b, Integer coeff = 1) {
    CobordismElement e(std::move(torus));
    e.add_term(b, coeff);
    return e;
  }

  const TropicalAffineTorus& torus() const { return *torus_; }
  const std::shared_ptr<const TropicalAffineTorus>& torus_ptr() const { return torus_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Integer coefficient(const QVector& b) const {
    const auto it = terms_.find(torus_point(*torus_, b));
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const QVector& b, const Integer& coeff) {
    if (coeff == 0) return;
    const TorusPoint p = torus_point(*torus_, b);
    auto& c = terms_[p];
    c += coeff;
    if (c == 0) terms_.erase(p);
  }

  CobordismElement operator+(const CobordismElement& o) const {
    check_same(o);
    CobordismElement r = *this;
    for (const auto& [p, c] : o.terms_) r.add_term(p, c);
    return r;
  }

  CobordismElement operator-() const {
    CobordismElement r = *this;
    for (auto& [p, c] : r.terms_) c = -c;
    return r;
  }

  CobordismElement operator-(const CobordismElement& o) const { return *this + (-o); }

  friend CobordismElement operator*(const Integer& s, const CobordismElement& e) {
    CobordismElement r(e.torus_);
    for (const auto& [p, c] : e.terms_) r.add_term(p, s * c);
    return r;
  }

  bool operator==(const CobordismElement& o) const { return *torus_ == *o.torus_ && terms_ == o.terms_; }

  void check_same(const CobordismElement& o) const {
    if (torus_ != o.torus_ && !(*torus_ == *o.torus_)) throw Error(ErrorKind::TorusMismatch, "elements on different tori");
  }

 private:
  std::shared_ptr<const TropicalAffineTorus> torus_;
  Terms terms_;
};

/// Convolution: the coefficient of b is the sum over p + q = b.
inline CobordismElement pontryagin(const CobordismElement& a, const CobordismElement& b) {
  a.check_same(b);
  CobordismElement r(a.torus_ptr());
  for (const auto& [p, c] : a.terms())
    for (const auto& [q, d] : b.terms()) r.add_term(p + q, c * d);
  return r;
}

inline CobordismElement unit_element(std::shared_ptr<const TropicalAffineTorus> torus) {
  const std::size_t n = torus->dim();
  return CobordismElement::fiber(std::move(torus), zero_vector(n));
}

inline Integer augmentation(const CobordismElement& e) {
  Integer s = 0;
  for (const auto& [p, c] : e.terms()) s += c;
  return s;
}

inline TorusPoint albanese(const CobordismElement& e) {
  if (augmentation(e) != 0) throw Error(ErrorKind::NotDegreeZero, "albanese needs a degree-zero element");
  QVector s = zero_vector(e.torus().dim());
  for (const auto& [p, c] : e.terms()) s = s + Rational(c) * p;
  return e.torus().reduce(s);
}

using PointPair = std::pair<QVector, QVector>;

/// Product over the pairs of ([b+] - [b-]).
inline CobordismElement filtration_generator(std::shared_ptr<const TropicalAffineTorus> torus,
                                             const std::vector<PointPair>& pairs) {
  if (pairs.empty()) throw Error(ErrorKind::DimensionMismatch, "need at least one pair");
  std::optional<CobordismElement> acc;
  for (const auto& [bp, bm] : pairs) {
    const auto d = CobordismElement::fiber(torus, bp) - CobordismElement::fiber(torus, bm);
    acc = acc ? pontryagin(*acc, d) : d;
  }
  return *acc;
}

enum class BraneKind { Fiber, FlatSection };
enum class BraneSide { Primal, Dual };

/// A fiber or flat section on X(B) (primal side) or on the mirror X(B^vee) (dual side).
struct BraneSymbol {
  BraneKind kind = BraneKind::Fiber;
  BraneSide side = BraneSide::Primal;
  QVector level;       ///< base point for fibers, covector class for sections
  Rational grading;    ///< n/2 for fibers, 0 for sections
  long shift = 0;

  bool operator==(const BraneSymbol& o) const {
    return kind == o.kind && side == o.side && level == o.level && grading == o.grading && shift == o.shift;
  }
};

inline BraneSide other_side(BraneSide s) { return s == BraneSide::Primal ? BraneSide::Dual : BraneSide::Primal; }

/// Base torus of the given side; sections on that side have levels on the base torus of the other side.
inline TropicalAffineTorus side_torus(const TropicalAffineTorus& b, BraneSide s) {
  return s == BraneSide::Primal ? b : dual_torus(b);
}

inline TropicalAffineTorus level_torus(const TropicalAffineTorus& b, BraneKind kind, BraneSide s) {
  return side_torus(b, kind == BraneKind::Fiber ? s : other_side(s));
}

/// Standard symbol with its level reduced on the appropriate torus.
inline BraneSymbol make_symbol(const TropicalAffineTorus& b, BraneKind kind, BraneSide side, const QVector& level,
                               long shift = 0) {
  const TropicalAffineTorus t = level_torus(b, kind, side);
  if (level.size() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "level has wrong dimension");
  const Rational g = kind == BraneKind::Fiber ? make_rational(static_cast<long>(b.dim()), 2) : Rational(0);
  return BraneSymbol{kind, side, t.reduce(level), g, shift};
}

/// Fiber(b, n/2) -> FlatSection(b, 0) and FlatSection(a, 0) -> Fiber(-a, n/2)[n], on the other side.
inline BraneSymbol fourier_object(const BraneSymbol& s, const TropicalAffineTorus& b) {
  const long n = static_cast<long>(b.dim());
  const TropicalAffineTorus t = level_torus(b, s.kind, s.side);
  if (s.level.size() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "level has wrong dimension");
  if (t.reduce(s.level) != s.level) throw Error(ErrorKind::Parse, "level is not reduced");
  const BraneSide out_side = other_side(s.side);
  if (s.kind == BraneKind::Fiber) {
    if (s.grading != make_rational(n, 2)) throw Error(ErrorKind::Parse, "fiber must carry grading n/2");
    return make_symbol(b, BraneKind::FlatSection, out_side, s.level, s.shift);
  }
  if (s.grading != 0) throw Error(ErrorKind::Parse, "flat section must carry grading 0");
  return make_symbol(b, BraneKind::Fiber, out_side, -s.level, s.shift + n);
}

/// Flat sections on the same side add their levels.
inline BraneSymbol fiberwise_sum_sections(const BraneSymbol& a, const BraneSymbol& c, const TropicalAffineTorus& b) {
  if (a.kind != BraneKind::FlatSection || c.kind != BraneKind::FlatSection)
    throw Error(ErrorKind::DimensionMismatch, "fiberwise sum is defined on sections");
  if (a.side != c.side) throw Error(ErrorKind::TorusMismatch, "sections on different sides");
  return make_symbol(b, BraneKind::FlatSection, a.side, a.level + c.level, a.shift + c.shift);
}

/// Integer combination of flat sections keyed by reduced level.
struct SectionCombination {
  std::shared_ptr<const TropicalAffineTorus> level_torus;
  std::map<TorusPoint, Integer, QVectorLess> terms;

  void add_term(const QVector& level, const Integer& c) {
    if (c == 0) return;
    const TorusPoint p = level_torus->reduce(level);
    auto& x = terms[p];
    x += c;
    if (x == 0) terms.erase(p);
  }

  bool operator==(const SectionCombination& o) const { return *level_torus == *o.level_torus && terms == o.terms; }
};

inline SectionCombination fourier_on_cob(const CobordismElement& e) {
  SectionCombination s{e.torus_ptr(), {}};
  for (const auto& [p, c] : e.terms()) s.add_term(p, c);
  return s;
}

/// Bilinear extension of fiberwise addition.
inline SectionCombination tensor(const SectionCombination& a, const SectionCombination& b) {
  if (!(*a.level_torus == *b.level_torus)) throw Error(ErrorKind::TorusMismatch, "section combinations on different tori");
  SectionCombination r{a.level_torus, {}};
  for (const auto& [p, c] : a.terms)
    for (const auto& [q, d] : b.terms) r.add_term(p + q, c * d);
  return r;
}

enum class FiltrationStatus { Vanishes, Degenerate, NotEmpty };

struct FiltrationResult {
  FiltrationStatus status = FiltrationStatus::NotEmpty;
  std::optional<std::size_t> degenerate_pair;
  Polarization dual;
  PerturbationCertificate certificate;
  std::map<std::string, bool> emptiness;  ///< independent recomputation over all sign vectors

  bool success() const { return status != FiltrationStatus::NotEmpty; }
};

/// Each pair (b+, b-) gives the flat-section class b+ - b- on the dual torus; the element
/// vanishes once every sign choice of the resulting corner loci has empty intersection.
inline FiltrationResult verify_filtration_vanishing(const Polarization& p, const std::vector<PointPair>& pairs, long k,
                                                    std::uint64_t seed, std::size_t max_trials) {
  const std::size_t n = p.dim();
  if (pairs.size() != n + 1) throw Error(ErrorKind::DimensionMismatch, "expected n+1 pairs");
  FiltrationResult res;
  res.dual = dual_polarization(p);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first.size() != n || pairs[i].second.size() != n)
      throw Error(ErrorKind::DimensionMismatch, "pair point has wrong dimension");
    if (p.torus.same_point(pairs[i].first, pairs[i].second)) {
      res.status = FiltrationStatus::Degenerate;
      res.degenerate_pair = i;
      return res;
    }
  }
  const CosetSystem cs(res.dual, k);
  std::vector<PerturbationTarget> targets;
  for (const auto& [bp, bm] : pairs) {
    const AffineFunctionClass cls{bp - bm, 0};
    const NormVectors w = linear_to_norm_vectors(res.dual, k, cls);
    section_to_rational_fn(res.dual, k, cls, zero_delta(cs), zero_delta(cs));
    targets.push_back({w.w_plus, cs});
    targets.push_back({w.w_minus, cs});
  }
  PerturbationResult search = perturb_search(res.dual, k, targets, seed, max_trials);
  std::vector<std::pair<TropicalComplex, TropicalComplex>> groups;
  for (std::size_t i = 0; i + 1 < search.loci.size(); i += 2) groups.emplace_back(search.loci[i], search.loci[i + 1]);
  res.emptiness = verify_empty_total_intersection(groups);
  res.certificate = std::move(search.certificate);
  bool all = true;
  for (const auto& [s, e] : res.emptiness) all = all && e;
  res.status = all && res.certificate.all_empty() ? FiltrationStatus::Vanishes : FiltrationStatus::NotEmpty;
  return res;
}

}  // namespace tropcob
