#pragma once

// Seeded search for coset constants making a family of theta hypersurfaces
// regular and successively transverse, with a replayable certificate.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropcob/intersect.hpp"

namespace tropcob {

struct PerturbationTarget {
  QVector w;
  CosetSystem cosets;
};

struct HypersurfaceRecord {
  std::size_t group = 0;
  char sign = '+';
  QVector w;
  std::vector<Rational> delta;  ///< one value per coset
  std::size_t trials = 0;
  bool regular = false;
  /// Barycenter of every cell of the corner locus with the function value there.
  std::vector<std::pair<QVector, Rational>> witnesses;
};

struct StageRecord {
  std::size_t group = 0;
  std::string prefix;  ///< signs chosen for the earlier groups
  char sign = '+';
  bool transverse = false;
  std::size_t violations = 0;
  int dim = -1;  ///< dimension of the resulting partial intersection, -1 when empty
  bool pure = false;
};

struct PerturbationCertificate {
  long k = 1;
  std::uint64_t seed = 0;
  std::size_t max_trials = 0;
  std::size_t trials = 0;
  bool complete = false;
  std::vector<HypersurfaceRecord> hypersurfaces;
  std::vector<StageRecord> stages;
  std::map<std::string, bool> empty;  ///< sign vector -> total intersection is empty

  bool all_empty() const {
    if (!complete || empty.empty()) return false;
    for (const auto& [s, e] : empty)
      if (!e) return false;
    return true;
  }
};

class ExhaustedError : public Error {
 public:
  explicit ExhaustedError(PerturbationCertificate partial)
      : Error(ErrorKind::Exhausted, "no admissible perturbation within the trial budget"), partial_(std::move(partial)) {}
  const PerturbationCertificate& partial() const noexcept { return partial_; }

 private:
  PerturbationCertificate partial_;
};

struct PerturbationResult {
  PerturbationCertificate certificate;
  std::vector<ThetaFunction> thetas;      ///< in target order
  std::vector<TropicalComplex> loci;      ///< corner loci, in target order
};

/// Denominator of the drawn constants is 2^16 * 8k, so every value lies in [0, 1/(8k)).
class DeltaSampler {
 public:
  DeltaSampler(std::uint64_t seed, long k) : gen_(seed), k_(k) {}

  std::vector<Rational> draw(std::size_t count) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
      Rational v(Integer(static_cast<unsigned long>(gen_() >> 48)), Integer(65536L * 8L * k_));
      v.canonicalize();
      out.push_back(v);
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
  long k_;
};

namespace detail {

inline std::vector<std::pair<QVector, Rational>> locus_witnesses(const ThetaFunction& th, const TropicalComplex& cx) {
  std::vector<std::pair<QVector, Rational>> out;
  for (const auto& c : cx.cells()) {
    const QVector b = c.shape.barycenter();
    out.emplace_back(b, th(b));
  }
  return out;
}

using Partials = std::map<std::string, TropicalComplex>;

// Intersects every partial with both hypersurfaces of the next group.
inline Partials advance(const Partials& partials, std::size_t group, const TropicalComplex& plus,
                        const TropicalComplex& minus, std::vector<StageRecord>& stages) {
  Partials next;
  const std::size_t n = plus.ambient_dim();
  for (char sign : {'+', '-'}) {
    const TropicalComplex& h = sign == '+' ? plus : minus;
    if (group == 0) {
      stages.push_back({0, "", sign, true, 0, h.pure_dim(), pure_dimension_audit(h)});
      next.emplace(std::string(1, sign), h);
      continue;
    }
    for (const auto& [prefix, part] : partials) {
      StageRecord rec{group, prefix, sign, false, 0, -1, false};
      const auto rep = check_transverse(part, h);
      rec.violations = rep.violations.size();
      rec.transverse = rep.pass;
      if (rep.pass) {
        TropicalComplex meet = intersect_complexes(part, h);
        int top = -1;
        for (const auto& c : meet.cells()) top = std::max(top, c.dim());
        rec.dim = top;
        rec.pure = meet.empty() || (top == static_cast<int>(n) - static_cast<int>(group) - 1 && pure_dimension_audit(meet));
        next.emplace(prefix + sign, std::move(meet));
      }
      stages.push_back(std::move(rec));
    }
  }
  return next;
}

inline void record_emptiness(const Partials& finals, PerturbationCertificate& cert) {
  for (const auto& [s, cx] : finals) cert.empty[s] = cx.empty();
}

}  // namespace detail

/// Targets come in consecutive pairs (group i uses targets 2i and 2i+1 for the + and - side).
inline PerturbationResult perturb_search(const Polarization& p, long k, const std::vector<PerturbationTarget>& targets,
                                         std::uint64_t seed, std::size_t max_trials) {
  if (targets.empty() || targets.size() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "targets must come in +/- pairs");
  PerturbationResult res;
  auto& cert = res.certificate;
  cert.k = k;
  cert.seed = seed;
  cert.max_trials = max_trials;
  DeltaSampler sampler(seed, k);
  detail::Partials partials;
  const std::size_t groups = targets.size() / 2;
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<TropicalComplex> accepted;
    for (std::size_t side = 0; side < 2; ++side) {
      const auto& t = targets[2 * g + side];
      bool ok = false;
      for (std::size_t trial = 1; trial <= max_trials && !ok; ++trial) {
        ++cert.trials;
        auto delta = sampler.draw(t.cosets.size());
        ThetaFunction th = make_theta(p, k, make_delta(t.cosets, delta), t.w);
        TropicalComplex cx = corner_locus(th);
        if (!check_regular(cx)) continue;
        bool transverse = true;
        for (const auto& [prefix, part] : partials)
          if (!check_transverse(part, cx).pass) {
            transverse = false;
            break;
          }
        if (!transverse) continue;
        ok = true;
        cert.hypersurfaces.push_back(
            {g, side == 0 ? '+' : '-', t.w, delta, trial, true, detail::locus_witnesses(th, cx)});
        res.thetas.push_back(std::move(th));
        res.loci.push_back(cx);
        accepted.push_back(std::move(cx));
      }
      if (!ok) throw ExhaustedError(cert);
    }
    partials = detail::advance(partials, g, accepted[0], accepted[1], cert.stages);
  }
  detail::record_emptiness(partials, cert);
  cert.complete = true;
  return res;
}

struct ReplayResult {
  bool ok = true;
  std::string first_mismatch;
};

/// Recomputes every flag and witness of a certificate from its stored constants.
inline ReplayResult replay(const Polarization& p, const PerturbationCertificate& cert) {
  ReplayResult out;
  auto fail = [&](std::string what) {
    if (out.ok) {
      out.ok = false;
      out.first_mismatch = std::move(what);
    }
  };
  if (!cert.complete) {
    fail("certificate is incomplete");
    return out;
  }
  const CosetSystem cs(p, cert.k);
  std::vector<TropicalComplex> loci;
  for (std::size_t i = 0; i < cert.hypersurfaces.size(); ++i) {
    const auto& h = cert.hypersurfaces[i];
    const std::string tag = "hypersurface " + std::to_string(i);
    if (h.group != i / 2 || h.sign != (i % 2 == 0 ? '+' : '-')) {
      fail(tag + ": out of order");
      return out;
    }
    if (h.delta.size() != cs.size() || h.w.size() != p.dim()) {
      fail(tag + ": wrong number of entries");
      return out;
    }
    ThetaFunction th = make_theta(p, cert.k, make_delta(cs, h.delta), h.w);
    TropicalComplex cx = corner_locus(th);
    if (check_regular(cx) != h.regular) fail(tag + ": regularity flag");
    if (detail::locus_witnesses(th, cx) != h.witnesses) fail(tag + ": witnesses");
    loci.push_back(std::move(cx));
  }
  if (!out.ok) return out;
  if (loci.size() % 2 != 0) {
    fail("odd number of hypersurfaces");
    return out;
  }
  std::vector<StageRecord> stages;
  detail::Partials partials;
  for (std::size_t g = 0; g < loci.size() / 2; ++g) partials = detail::advance(partials, g, loci[2 * g], loci[2 * g + 1], stages);
  if (stages.size() != cert.stages.size()) {
    fail("number of stage records");
    return out;
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& a = stages[i];
    const auto& b = cert.stages[i];
    if (a.group != b.group || a.prefix != b.prefix || a.sign != b.sign || a.transverse != b.transverse ||
        a.violations != b.violations || a.dim != b.dim || a.pure != b.pure) {
      fail("stage record " + std::to_string(i));
      return out;
    }
  }
  PerturbationCertificate tmp;
  detail::record_emptiness(partials, tmp);
  if (tmp.empty != cert.empty) fail("emptiness flags");
  return out;
}

}  // namespace tropcob
