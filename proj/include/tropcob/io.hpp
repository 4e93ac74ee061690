#pragma once

// JSON encodings (rationals as "p/q" strings) and SVG drawing of complexes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tropcob/cobordism.hpp"

namespace tropcob::io {

using json = nlohmann::json;

inline void require_fields(const json& j, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, where + ": expected an object");
  for (const char* r : required)
    if (!j.contains(r)) throw Error(ErrorKind::Parse, where + ": missing field '" + r + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto known = [&](std::initializer_list<const char*> l) {
      return std::any_of(l.begin(), l.end(), [&](const char* f) { return key == f; });
    };
    if (!known(required) && !known(optional)) throw Error(ErrorKind::Parse, where + ": unknown field '" + key + "'");
  }
}

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw Error(ErrorKind::Parse, "rational must be a \"p/q\" string or an integer");
}

inline json to_json(const Rational& r) { return to_string(r); }

inline QVector vector_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline std::vector<Integer> integer_vector_from(const json& j) {
  std::vector<Integer> out;
  for (const auto& x : vector_from(j)) {
    if (!is_integer(x)) throw Error(ErrorKind::Parse, "expected integers");
    out.push_back(x.get_num());
  }
  return out;
}

inline json to_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

/// A list of vectors, read as the columns of a matrix.
inline QMatrix columns_from(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw Error(ErrorKind::Parse, what + ": expected " + std::to_string(n) + " vectors");
  std::vector<QVector> cols;
  for (const auto& c : j) {
    cols.push_back(vector_from(c));
    if (cols.back().size() != n) throw Error(ErrorKind::Parse, what + ": vector of wrong length");
  }
  return QMatrix::from_columns(cols);
}

inline json columns_to_json(const QMatrix& m) {
  json a = json::array();
  for (const auto& c : m.columns()) a.push_back(to_json(c));
  return a;
}

inline long integer_field(const json& j, const char* name, const std::string& where) {
  const json& x = j.at(name);
  if (!x.is_number_integer()) throw Error(ErrorKind::Parse, where + ": '" + name + "' must be an integer");
  return x.get<long>();
}

struct TorusConfig {
  TropicalAffineTorus torus;
  QMatrix c;
};

/// {"n", "lambda1": [generators], "lambda2": [generators], "polarization": [c(gamma_j) per generator]}
inline TorusConfig torus_from(const json& j) {
  require_fields(j, {"n", "lambda1", "lambda2", "polarization"}, {}, "torus");
  const long n = integer_field(j, "n", "torus");
  if (n < 1) throw Error(ErrorKind::Parse, "torus: n must be positive");
  const auto un = static_cast<std::size_t>(n);
  const QMatrix l1 = columns_from(j.at("lambda1"), un, "lambda1");
  const QMatrix l2 = columns_from(j.at("lambda2"), un, "lambda2");
  const QMatrix c = columns_from(j.at("polarization"), un, "polarization");
  return {make_torus(l1, l2), c};
}

inline json torus_to_json(const TropicalAffineTorus& t, const QMatrix& c) {
  return {{"n", t.dim()},
          {"lambda1", columns_to_json(t.periods().basis())},
          {"lambda2", columns_to_json(t.tangent_lattice().basis())},
          {"polarization", columns_to_json(c)}};
}

inline json matrix_rows_to_json(const QMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

// ---- complexes ----

inline json complex_to_json(const TropicalComplex& cx) {
  json cells = json::array();
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const auto& c = cx.cell(i);
    json verts = json::array(), active = json::array(), faces = json::array();
    for (const auto& v : c.shape.vertices()) verts.push_back(to_json(v));
    for (const auto& a : c.active) active.push_back(to_json(a));
    for (const auto& f : c.faces) faces.push_back({{"id", f.id}, {"shift", to_json(f.shift)}});
    json cell = {{"id", i}, {"dim", c.dim()}, {"vertices", verts}, {"active", active}, {"faces", faces}};
    if (c.dim() == cx.pure_dim()) cell["weight"] = c.weight.get_str();
    if (c.boundary) cell["boundary"] = true;
    cells.push_back(std::move(cell));
  }
  return {{"n", cx.ambient_dim()}, {"periodic", cx.periodic()}, {"pure_dim", cx.pure_dim()}, {"cells", cells}};
}

// ---- theta and fixture inputs ----

struct ThetaConfig {
  TorusConfig torus;
  long k = 1;
  std::vector<Rational> delta;  ///< by coset index, empty means zero
  QVector w;
};

/// {"torus", "k", "delta": {"index": "p/q"} or [...], "w": [...]}
inline ThetaConfig theta_from(const json& j) {
  require_fields(j, {"torus", "k"}, {"delta", "w"}, "theta");
  ThetaConfig t;
  t.torus = torus_from(j.at("torus"));
  t.k = integer_field(j, "k", "theta");
  if (t.k < 1) throw Error(ErrorKind::Parse, "theta: k must be positive");
  const std::size_t n = t.torus.torus.dim();
  t.w = j.contains("w") ? vector_from(j.at("w")) : zero_vector(n);
  if (t.w.size() != n) throw Error(ErrorKind::Parse, "theta: w has wrong length");
  if (j.contains("delta")) {
    const json& d = j.at("delta");
    if (d.is_array()) {
      t.delta = vector_from(d);
    } else if (d.is_object()) {
      std::size_t max_idx = 0;
      for (auto it = d.begin(); it != d.end(); ++it) max_idx = std::max(max_idx, std::stoul(it.key()) + 1);
      t.delta.assign(max_idx, Rational(0));
      for (auto it = d.begin(); it != d.end(); ++it) t.delta[std::stoul(it.key())] = rational_from(it.value());
    } else {
      throw Error(ErrorKind::Parse, "theta: delta must be an array or an object");
    }
  }
  return t;
}

struct FixtureConfig {
  std::vector<AffineTerm> terms;
  QVector lo, hi;
};

/// {"terms": [{"slope": [...], "const": "p/q"}], "box": {"lo": [...], "hi": [...]}}
inline FixtureConfig fixture_from(const json& j) {
  require_fields(j, {"terms", "box"}, {}, "fixture");
  FixtureConfig f;
  for (const auto& t : j.at("terms")) {
    require_fields(t, {"slope"}, {"const"}, "term");
    f.terms.push_back({vector_from(t.at("slope")), t.contains("const") ? rational_from(t.at("const")) : Rational(0)});
  }
  require_fields(j.at("box"), {"lo", "hi"}, {}, "box");
  f.lo = vector_from(j.at("box").at("lo"));
  f.hi = vector_from(j.at("box").at("hi"));
  if (f.terms.empty() || f.lo.size() != f.hi.size()) throw Error(ErrorKind::Parse, "fixture: inconsistent sizes");
  for (const auto& t : f.terms)
    if (t.slope.size() != f.lo.size()) throw Error(ErrorKind::Parse, "fixture: slope of wrong length");
  for (std::size_t i = 0; i < f.lo.size(); ++i)
    if (!(f.lo[i] < f.hi[i])) throw Error(ErrorKind::Parse, "fixture: empty box");
  return f;
}

// ---- pipeline and certificates ----

struct PipelineConfig {
  TorusConfig torus;
  std::vector<PointPair> pairs;
  long k = 1;
  std::uint64_t seed = 0;
  std::size_t max_trials = 20;
  long k_cap = 4;
};

inline PipelineConfig pipeline_from(const json& j) {
  require_fields(j, {"torus", "pairs"}, {"k", "seed", "max_trials", "k_cap"}, "pipeline");
  PipelineConfig p;
  p.torus = torus_from(j.at("torus"));
  const std::size_t n = p.torus.torus.dim();
  if (!j.at("pairs").is_array()) throw Error(ErrorKind::Parse, "pairs must be an array");
  for (const auto& pr : j.at("pairs")) {
    if (!pr.is_array() || pr.size() != 2) throw Error(ErrorKind::Parse, "each pair needs two points");
    PointPair pp{vector_from(pr[0]), vector_from(pr[1])};
    if (pp.first.size() != n || pp.second.size() != n) throw Error(ErrorKind::Parse, "pair point of wrong length");
    p.pairs.push_back(std::move(pp));
  }
  if (j.contains("k")) p.k = integer_field(j, "k", "pipeline");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw Error(ErrorKind::Parse, "seed must be a non-negative integer");
    p.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("max_trials")) {
    const long m = integer_field(j, "max_trials", "pipeline");
    if (m < 0) throw Error(ErrorKind::Parse, "max_trials must be non-negative");
    p.max_trials = static_cast<std::size_t>(m);
  }
  if (j.contains("k_cap")) p.k_cap = integer_field(j, "k_cap", "pipeline");
  if (p.k < 1) throw Error(ErrorKind::Parse, "k must be positive");
  return p;
}

inline json pipeline_to_json(const PipelineConfig& p) {
  json pairs = json::array();
  for (const auto& [a, b] : p.pairs) pairs.push_back(json::array({to_json(a), to_json(b)}));
  return {{"torus", torus_to_json(p.torus.torus, p.torus.c)},
          {"pairs", pairs},
          {"k", p.k},
          {"seed", p.seed},
          {"max_trials", p.max_trials},
          {"k_cap", p.k_cap}};
}

inline json certificate_to_json(const PerturbationCertificate& c) {
  json hs = json::array();
  for (const auto& h : c.hypersurfaces) {
    json wit = json::array();
    for (const auto& [pt, val] : h.witnesses) wit.push_back({{"point", to_json(pt)}, {"value", to_string(val)}});
    hs.push_back({{"group", h.group},
                  {"sign", std::string(1, h.sign)},
                  {"w", to_json(h.w)},
                  {"delta", to_json(h.delta)},
                  {"trials", h.trials},
                  {"regular", h.regular},
                  {"witnesses", wit}});
  }
  json st = json::array();
  for (const auto& s : c.stages)
    st.push_back({{"group", s.group},
                  {"prefix", s.prefix},
                  {"sign", std::string(1, s.sign)},
                  {"transverse", s.transverse},
                  {"violations", s.violations},
                  {"dim", s.dim},
                  {"pure", s.pure}});
  json em = json::object();
  for (const auto& [s, e] : c.empty) em[s] = e;
  return {{"k", c.k},       {"seed", c.seed},  {"max_trials", c.max_trials}, {"trials", c.trials},
          {"complete", c.complete}, {"hypersurfaces", hs}, {"stages", st}, {"empty", em}};
}

inline char sign_from(const json& j) {
  const std::string s = j.get<std::string>();
  if (s != "+" && s != "-") throw Error(ErrorKind::Parse, "sign must be + or -");
  return s[0];
}

inline PerturbationCertificate certificate_from(const json& j) {
  require_fields(j, {"k", "seed", "max_trials", "trials", "complete", "hypersurfaces", "stages", "empty"}, {},
                 "certificate");
  PerturbationCertificate c;
  c.k = j.at("k").get<long>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.max_trials = j.at("max_trials").get<std::size_t>();
  c.trials = j.at("trials").get<std::size_t>();
  c.complete = j.at("complete").get<bool>();
  for (const auto& h : j.at("hypersurfaces")) {
    require_fields(h, {"group", "sign", "w", "delta", "trials", "regular", "witnesses"}, {}, "hypersurface");
    HypersurfaceRecord r;
    r.group = h.at("group").get<std::size_t>();
    r.sign = sign_from(h.at("sign"));
    r.w = vector_from(h.at("w"));
    r.delta = vector_from(h.at("delta"));
    r.trials = h.at("trials").get<std::size_t>();
    r.regular = h.at("regular").get<bool>();
    for (const auto& w : h.at("witnesses")) {
      require_fields(w, {"point", "value"}, {}, "witness");
      r.witnesses.emplace_back(vector_from(w.at("point")), rational_from(w.at("value")));
    }
    c.hypersurfaces.push_back(std::move(r));
  }
  for (const auto& s : j.at("stages")) {
    require_fields(s, {"group", "prefix", "sign", "transverse", "violations", "dim", "pure"}, {}, "stage");
    c.stages.push_back({s.at("group").get<std::size_t>(), s.at("prefix").get<std::string>(), sign_from(s.at("sign")),
                        s.at("transverse").get<bool>(), s.at("violations").get<std::size_t>(), s.at("dim").get<int>(),
                        s.at("pure").get<bool>()});
  }
  for (auto it = j.at("empty").begin(); it != j.at("empty").end(); ++it) c.empty[it.key()] = it.value().get<bool>();
  return c;
}

// ---- brane symbols ----

inline BraneSymbol symbol_from(const json& j, const TropicalAffineTorus& b) {
  require_fields(j, {"kind", "level"}, {"side", "grading", "shift"}, "symbol");
  const std::string kind = j.at("kind").get<std::string>();
  BraneSymbol s;
  if (kind == "fiber") {
    s.kind = BraneKind::Fiber;
  } else if (kind == "section") {
    s.kind = BraneKind::FlatSection;
  } else {
    throw Error(ErrorKind::Parse, "symbol kind must be 'fiber' or 'section'");
  }
  const std::string side = j.contains("side") ? j.at("side").get<std::string>() : "primal";
  if (side == "primal") {
    s.side = BraneSide::Primal;
  } else if (side == "dual") {
    s.side = BraneSide::Dual;
  } else {
    throw Error(ErrorKind::Parse, "symbol side must be 'primal' or 'dual'");
  }
  const TropicalAffineTorus t = level_torus(b, s.kind, s.side);
  const QVector level = vector_from(j.at("level"));
  if (level.size() != t.dim()) throw Error(ErrorKind::Parse, "symbol level does not live on this torus");
  s.level = t.reduce(level);
  s.grading = j.contains("grading") ? rational_from(j.at("grading"))
                                    : (s.kind == BraneKind::Fiber ? make_rational(static_cast<long>(b.dim()), 2) : Rational(0));
  if (j.contains("shift")) s.shift = integer_field(j, "shift", "symbol");
  return s;
}

inline json symbol_to_json(const BraneSymbol& s) {
  return {{"kind", s.kind == BraneKind::Fiber ? "fiber" : "section"},
          {"side", s.side == BraneSide::Primal ? "primal" : "dual"},
          {"level", to_json(s.level)},
          {"grading", to_string(s.grading)},
          {"shift", s.shift}};
}

// ---- SVG ----

/// Draws a periodic complex on a 2-torus inside its fundamental parallelogram.
inline std::string complex_to_svg(const TropicalComplex& cx) {
  if (cx.ambient_dim() != 2 || !cx.periodic()) throw Error(ErrorKind::DimensionMismatch, "SVG output needs a 2-torus");
  const QMatrix& l1 = cx.torus()->periods().basis();
  const QVector e1 = l1.col(0), e2 = l1.col(1);
  const std::vector<QVector> corners{zero_vector(2), e1, e1 + e2, e2};
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& c : corners) {
    xmin = std::min(xmin, c[0].get_d());
    xmax = std::max(xmax, c[0].get_d());
    ymin = std::min(ymin, c[1].get_d());
    ymax = std::max(ymax, c[1].get_d());
  }
  const double size = 480, pad = 20;
  const double scale = size / std::max(xmax - xmin, ymax - ymin);
  auto px = [&](const QVector& v) {
    return std::pair<double, double>{pad + (v[0].get_d() - xmin) * scale, pad + (ymax - v[1].get_d()) * scale};
  };
  std::ostringstream out;
  const double w = (xmax - xmin) * scale + 2 * pad, h = (ymax - ymin) * scale + 2 * pad;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
  std::ostringstream poly;
  for (const auto& c : corners) {
    const auto [x, y] = px(c);
    poly << x << ',' << y << ' ';
  }
  out << "<defs><clipPath id=\"fd\"><polygon points=\"" << poly.str() << "\"/></clipPath></defs>\n";
  out << "<polygon points=\"" << poly.str() << "\" fill=\"#fafafa\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  out << "<g clip-path=\"url(#fd)\">\n";
  for (long a = -1; a <= 1; ++a)
    for (long b = -1; b <= 1; ++b) {
      const QVector g = cx.period({Integer(a), Integer(b)});
      for (const auto& c : cx.cells()) {
        if (c.dim() == 1) {
          const auto [x1, y1] = px(c.shape.vertices().front() + g);
          const auto [x2, y2] = px(c.shape.vertices().back() + g);
          out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
              << "\" stroke=\"#1f4e99\" stroke-width=\"" << (c.weight > 1 ? 3 : 1.5) << "\"/>\n";
          if (c.weight > 1) {
            const auto [mx, my] = px(c.shape.barycenter() + g);
            out << "<text x=\"" << mx + 4 << "\" y=\"" << my - 4 << "\" font-size=\"12\">" << c.weight.get_str()
                << "</text>\n";
          }
        } else if (c.dim() == 0) {
          const auto [x, y] = px(c.shape.vertices().front() + g);
          out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"#b22\"/>\n";
        }
      }
    }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace tropcob::io
