#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropcob/io.hpp"
#include "tropcob/tropcob.hpp"

namespace {

using namespace tropcob;
using io::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kExhausted = 3;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return json::parse(text);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
}

json error_json(const Error& e) { return {{"error", to_string(e.kind())}, {"message", e.what()}}; }

int torus_validate(const std::string& path) {
  const io::TorusConfig cfg = io::torus_from(read_json(path));
  json report = {{"n", cfg.torus.dim()},
                 {"lambda1", io::columns_to_json(cfg.torus.periods().basis())},
                 {"lambda2", io::columns_to_json(cfg.torus.tangent_lattice().basis())}};
  try {
    const auto [p, m] = validate_polarization(cfg.torus, cfg.c);
    report["valid"] = true;
    report["gram"] = io::matrix_rows_to_json(p.gram);
    report["metric"] = io::matrix_rows_to_json(m.G);
    report["exponent"] = polarization_exponent(p).get_str();
    std::cout << report.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    report["valid"] = false;
    report.update(error_json(e));
    const QMatrix gram = cfg.torus.periods().basis().transpose() * cfg.c;
    if (e.kind() == ErrorKind::NotPositiveDefinite || e.kind() == ErrorKind::NotSymmetric) {
      report["gram"] = io::matrix_rows_to_json(gram);
    }
    if (e.kind() == ErrorKind::NotPositiveDefinite) {
      const auto minors = leading_principal_minors(gram);
      for (std::size_t i = 0; i < minors.size(); ++i)
        if (minors[i] <= 0) {
          report["witness"] = {{"minor", i + 1}, {"value", to_string(minors[i])}};
          break;
        }
    }
    std::cout << report.dump(2) << '\n';
    return kFailed;
  }
}

int hypersurface(const std::string& path, const std::string& out, const std::string& svg, bool balancing,
                 bool regular) {
  const json j = read_json(path);
  TropicalComplex cx;
  if (j.is_object() && j.contains("terms")) {
    const auto f = io::fixture_from(j);
    cx = corner_locus_affine(f.terms, f.lo, f.hi);
  } else {
    const auto t = io::theta_from(j);
    const Polarization p = validate_polarization(t.torus.torus, t.torus.c).first;
    const CosetSystem cs(p, t.k);
    std::vector<Rational> delta = t.delta;
    if (delta.empty()) delta.assign(cs.size(), Rational(0));
    if (delta.size() > cs.size()) throw Error(ErrorKind::Parse, "more delta values than cosets");
    delta.resize(cs.size(), Rational(0));
    cx = corner_locus(make_theta(p, t.k, make_delta(cs, delta), t.w));
  }
  json doc = io::complex_to_json(cx);
  int code = kOk;
  if (balancing) {
    const auto rep = balancing_report(cx);
    doc["balanced"] = rep.balanced;
    if (!rep.balanced) {
      doc["balancing_failure"] = {{"cell", *rep.first_failure}, {"residual", io::to_json(rep.residual)}};
      code = kFailed;
    }
  }
  if (regular) {
    const auto rep = regularity_report(cx);
    doc["regular"] = rep.regular;
    if (!rep.regular) {
      doc["regularity_failure"] = {{"cell", *rep.first_failure}, {"reason", rep.reason}};
      code = kFailed;
    }
  }
  write_text(out, doc.dump(2) + "\n");
  if (!svg.empty()) {
    if (cx.ambient_dim() == 2 && cx.periodic()) {
      write_text(svg, io::complex_to_svg(cx));
    } else {
      std::cerr << "note: SVG output is only produced for complexes on a 2-torus\n";
    }
  }
  return code;
}

const char* status_name(FiltrationStatus s) {
  switch (s) {
    case FiltrationStatus::Vanishes:
      return "vanishes";
    case FiltrationStatus::Degenerate:
      return "degenerate";
    case FiltrationStatus::NotEmpty:
      return "not-empty";
  }
  return "?";
}

int filtration_verify(const std::string& path, const std::string& out) {
  const io::PipelineConfig cfg = io::pipeline_from(read_json(path));
  const Polarization p = validate_polarization(cfg.torus.torus, cfg.torus.c).first;
  const long cap = std::max(cfg.k, cfg.k_cap);
  for (long k = cfg.k;; ++k) {
    try {
      const FiltrationResult r = verify_filtration_vanishing(p, cfg.pairs, k, cfg.seed, cfg.max_trials);
      json doc = {{"config", io::pipeline_to_json(cfg)}, {"status", status_name(r.status)}};
      if (r.status == FiltrationStatus::Degenerate) {
        doc["degenerate_pair"] = *r.degenerate_pair;
      } else {
        doc["certificate"] = io::certificate_to_json(r.certificate);
        json em = json::object();
        for (const auto& [s, e] : r.emptiness) em[s] = e;
        doc["emptiness"] = em;
      }
      write_text(out, doc.dump(2) + "\n");
      if (!out.empty() && out != "-") {
        std::size_t empty = 0;
        for (const auto& [s, e] : r.emptiness) empty += e ? 1 : 0;
        std::cout << status_name(r.status) << ": k=" << k << ", " << empty << "/" << r.emptiness.size()
                  << " sign vectors empty\n";
      }
      return r.success() ? kOk : kFailed;
    } catch (const ExhaustedError& e) {
      if (k >= cap) {
        std::cerr << "exhausted: no admissible perturbation up to k=" << k << '\n';
        return kExhausted;
      }
    }
  }
}

int filtration_replay(const std::string& cert_path) {
  const json doc = read_json(cert_path);
  io::require_fields(doc, {"config", "status"}, {"certificate", "emptiness", "degenerate_pair"}, "certificate file");
  const io::PipelineConfig cfg = io::pipeline_from(doc.at("config"));
  const Polarization p = validate_polarization(cfg.torus.torus, cfg.torus.c).first;
  if (doc.at("status") == "degenerate") {
    const std::size_t i = doc.at("degenerate_pair").get<std::size_t>();
    const bool ok = i < cfg.pairs.size() && p.torus.same_point(cfg.pairs[i].first, cfg.pairs[i].second);
    std::cout << (ok ? "replay ok: degenerate pair confirmed\n" : "replay mismatch: pair is not degenerate\n");
    return ok ? kOk : kFailed;
  }
  const PerturbationCertificate cert = io::certificate_from(doc.at("certificate"));
  const ReplayResult r = replay(dual_polarization(p), cert);
  if (!r.ok) {
    std::cout << "replay mismatch: " << r.first_mismatch << '\n';
    return kFailed;
  }
  if (!cert.all_empty()) {
    std::cout << "replay ok, but some sign vector has a nonempty intersection\n";
    return kFailed;
  }
  std::cout << "replay ok: " << cert.empty.size() << "/" << cert.empty.size() << " sign vectors empty\n";
  return kOk;
}

int fourier(const std::string& path, bool twice) {
  const json j = read_json(path);
  io::require_fields(j, {"torus", "symbol"}, {}, "fourier input");
  const io::TorusConfig cfg = io::torus_from(j.at("torus"));
  const BraneSymbol s = io::symbol_from(j.at("symbol"), cfg.torus);
  const BraneSymbol once = fourier_object(s, cfg.torus);
  json doc = {{"input", io::symbol_to_json(s)}, {"output", io::symbol_to_json(once)}};
  if (!twice) {
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  const BraneSymbol again = fourier_object(once, cfg.torus);
  const long n = static_cast<long>(cfg.torus.dim());
  const TropicalAffineTorus lt = level_torus(cfg.torus, s.kind, s.side);
  const bool ok = again.kind == s.kind && again.side == s.side && again.grading == s.grading &&
                  again.shift == s.shift + n && again.level == lt.reduce(-s.level);
  doc["twice"] = io::symbol_to_json(again);
  doc["negation_and_shift"] = ok;
  std::cout << doc.dump(2) << '\n';
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on polarized tropical affine tori"};
  app.require_subcommand(1);

  std::string torus_path;
  auto* tv = app.add_subcommand("torus-validate", "Validate a torus and polarization");
  tv->add_option("config", torus_path, "torus JSON (- for stdin)")->required();

  std::string hs_path, hs_out, hs_svg;
  bool hs_bal = false, hs_reg = false;
  auto* hs = app.add_subcommand("hypersurface", "Corner locus of a theta function or an affine fixture");
  hs->add_option("config", hs_path, "theta or fixture JSON (- for stdin)")->required();
  hs->add_option("-o,--output", hs_out, "write the complex JSON here instead of stdout");
  hs->add_option("--svg", hs_svg, "write an SVG drawing (2-torus only)");
  hs->add_flag("--check-balancing", hs_bal, "fail unless the complex is balanced");
  hs->add_flag("--check-regular", hs_reg, "fail unless the complex is regular");

  std::string fv_path, fv_out, fv_replay;
  auto* fv = app.add_subcommand("filtration-verify", "Certify vanishing of an (n+1)-fold filtration generator");
  fv->add_option("config", fv_path, "pipeline JSON (- for stdin)");
  fv->add_option("-o,--output", fv_out, "write the certificate here instead of stdout");
  fv->add_option("--replay", fv_replay, "re-validate a stored certificate");

  std::string fo_path;
  bool fo_twice = false;
  auto* fo = app.add_subcommand("fourier", "Apply the Fourier transform to a brane symbol");
  fo->add_option("symbol", fo_path, "symbol JSON (- for stdin)")->required();
  fo->add_flag("--twice", fo_twice, "apply twice and check negation with shift n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (tv->parsed()) return torus_validate(torus_path);
    if (hs->parsed()) return hypersurface(hs_path, hs_out, hs_svg, hs_bal, hs_reg);
    if (fv->parsed()) {
      if (!fv_replay.empty()) return filtration_replay(fv_replay);
      if (fv_path.empty()) throw Error(ErrorKind::Parse, "filtration-verify needs a config or --replay");
      return filtration_verify(fv_path, fv_out);
    }
    if (fo->parsed()) return fourier(fo_path, fo_twice);
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::DimensionMismatch ||
                   e.kind() == ErrorKind::TorusMismatch
               ? kBadInput
               : kFailed;
  }
  return kBadInput;
}
