#include "hodge/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "hodge/generate.hpp"
#include "hodge/spectral.hpp"
#include "hodge/transfer.hpp"

namespace hodge {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json dims_json(const GradedSpace& s) {
  Json out = Json::array();
  for (const auto& [k, n] : s.dims()) out.push_back({k, n});
  return out;
}

std::string dims_text(const GradedSpace& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [k, n] : s.dims()) {
    if (!out.empty()) out += "  ";
    out += "[" + std::to_string(k) + "]=" + std::to_string(n);
  }
  return out;
}

// A named check with an optional witness; collected into "checks".
struct Checks {
  Json list = Json::array();
  std::ostringstream text;
  bool all = true;

  void add(const std::string& name, bool pass, const Json& witness = nullptr,
           const std::string& detail = "") {
    Json c = {{"name", name}, {"pass", pass}};
    if (!witness.is_null()) c["witness"] = witness;
    list.push_back(c);
    all = all && pass;
    text << (pass ? "  PASS  " : "  FAIL  ") << name;
    if (!detail.empty()) text << "  (" << detail << ")";
    text << "\n";
  }
};

Json violation_json(const RelationViolation& v) {
  return {{"n", v.n}, {"source_degree", v.source_degree}, {"block", matrix_to_json(v.block)}};
}

std::string violation_text(const RelationViolation& v) {
  return "n = " + std::to_string(v.n) + ", source degree " + std::to_string(v.source_degree);
}

void add_relation_checks(Checks& c, const Multicomplex& m, const std::string& prefix = "") {
  const ValidationReport rep = validate_multicomplex(m);
  const std::size_t top = 2 * std::max<std::size_t>(m.length(), 1) - 2;
  for (std::size_t n = 0; n <= top; ++n) {
    const std::string name = prefix + "relation n=" + std::to_string(n);
    const RelationViolation* v = nullptr;
    for (const auto& x : rep.violations) {
      if (x.n == n) {
        v = &x;
        break;
      }
    }
    if (v) c.add(name, false, violation_json(*v), violation_text(*v));
    else c.add(name, true);
  }
}

Json hodge_json(const HodgeCheck& h) {
  Json out = {{"holds", h.holds}};
  if (!h.holds) {
    out["witness"] = {{"n", h.n}, {"source_degree", h.source_degree},
                      {"block", matrix_to_json(h.block)}};
  }
  return out;
}

std::string hodge_text(const HodgeCheck& h) {
  if (h.holds) return "all transferred higher operators vanish";
  return "D'_" + std::to_string(h.n) + " != 0 on source degree " + std::to_string(h.source_degree);
}

Json degeneration_json(const Degeneration& d) {
  Json out = {{"degenerates", d.degenerates}};
  if (!d.degenerates) out["witness"] = {{"page", d.r}, {"s", d.where.first}, {"n", d.where.second}};
  return out;
}

std::string degeneration_text(const Degeneration& d) {
  if (d.degenerates) return "degenerates at E_1";
  return "d_" + std::to_string(d.r) + " != 0 from (s, n) = (" + std::to_string(d.where.first) +
         ", " + std::to_string(d.where.second) + ")";
}

// Pages 1..last with their nonzero entries.
void add_pages(Json& json, std::ostringstream& text, const TotalComplex& t, int last) {
  Json pages = Json::array();
  for (int r = 1; r <= last; ++r) {
    const SpectralPage p = page(t, r);
    Json entries = Json::array();
    text << "  E_" << r << ":";
    bool any = false;
    for (const auto& [bd, sq] : p.entries) {
      if (sq.dim() == 0) continue;
      entries.push_back({bd.first, bd.second, sq.dim()});
      text << "  (" << bd.first << "," << bd.second << ")=" << sq.dim();
      any = true;
    }
    if (!any) text << "  0";
    text << (p.differentials_vanish() ? "" : "   [d_" + std::to_string(r) + " != 0]") << "\n";
    pages.push_back({{"r", r}, {"entries", entries}, {"differentials_vanish",
                                                      p.differentials_vanish()}});
  }
  json["pages"] = pages;
}

}  // namespace

std::optional<std::string> output_dir() {
  const char* v = std::getenv("HODGECX_OUTPUT_DIR");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

Report validate_report(const Multicomplex& m) {
  Checks c;
  add_relation_checks(c, m);
  Report out;
  out.json = {{"command", "validate"},
              {"degrees", dims_json(m.space())},
              {"length", m.length()},
              {"checks", c.list},
              {"pass", c.all}};
  std::ostringstream text;
  text << "multicomplex: " << dims_text(m.space()) << ", " << m.length() << " operator(s)\n"
       << c.text.str() << (c.all ? "valid\n" : "INVALID\n");
  out.text = text.str();
  out.exit_code = c.all ? exit_code::kPass : exit_code::kCheckFailed;
  return out;
}

Report cmd_validate(const std::string& path) {
  return validate_report(parse_multicomplex(read_file(path)));
}

Report analyze_report(const Multicomplex& m, const AnalyzeOptions& opts) {
  const auto start = Clock::now();
  Report out = validate_report(m);
  if (out.exit_code != exit_code::kPass) {
    out.json["command"] = "analyze";
    out.text += "analysis skipped: the relations do not hold\n";
    return out;
  }

  Json json = {{"command", "analyze"}, {"degrees", dims_json(m.space())}};
  std::ostringstream text;
  Checks c;

  const Splitting split = build_retract(m.d());
  const GradedSpace h = split.retract.small;
  json["homology"] = dims_json(h);
  text << "homology: " << dims_text(h) << "\n";

  const TransferOutput tr = transfer_structure(split, m);
  json["transferred"] = multicomplex_to_json(tr.transferred)["operators"];
  text << "transferred operators:";
  bool any_op = false;
  for (std::size_t n = 1; n < tr.transferred.length(); ++n) {
    if (tr.transferred.delta(n).is_zero()) continue;
    text << " D'_" << n;
    any_op = true;
  }
  text << (any_op ? " nonzero" : " all higher vanish") << "\n";
  c.add("transferred structure is a multicomplex", validate_multicomplex(tr.transferred).ok());
  c.add("i_inf is an infinity-morphism", validate_infinity_morphism(tr.i_inf).ok());
  c.add("p_inf is an infinity-morphism", validate_infinity_morphism(tr.p_inf).ok());

  const HodgeCheck hodge = check_hodge_data(split.retract, m);
  json["hodge_data"] = hodge_json(hodge);
  text << "hodge data (canonical retract): " << hodge_text(hodge) << "\n";

  const Splitting other = build_retract_randomized(m.d(), opts.seed);
  const HodgeCheck hodge2 = check_hodge_data(other.retract, m);
  json["randomized_retract"] = {{"seed", opts.seed}, {"hodge_data", hodge_json(hodge2)}};
  c.add("randomized retract agrees (seed " + std::to_string(opts.seed) + ")",
        hodge2.holds == hodge.holds);

  const TotalComplex t = total_complex(m);
  const int last = opts.pages ? std::max(1, *opts.pages) : t.stable_page();
  json["stable_page"] = t.stable_page();
  text << "spectral sequence (nonzero entries (s, n), pages 1.." << last << "):\n";
  add_pages(json, text, t, last);
  const Degeneration deg = degenerates_at_one(t);
  json["degeneration"] = degeneration_json(deg);
  text << "degeneration: " << degeneration_text(deg) << "\n";

  const GaugeSearch gauge = general_R_from_hodge(m);
  Json gj = {{"found", gauge.found}};
  if (gauge.found) {
    gj["R"] = series_to_json(gauge.r);
    const GaugeCheck gc = check_gauge_hodge(gauge.r, m);
    c.add("gauge equation e^R d e^-R = d + sum D_n z^n", gc.holds,
          gc.holds ? Json(nullptr) : Json{{"n", gc.n}});
    text << "gauge: R found (" << (gauge.r.is_zero() ? "R = 0" : "nonzero R") << ")\n";
  } else {
    gj["obstruction"] = gauge.obstruction;
    text << "gauge: no R exists (minimal model has D'_" << gauge.obstruction << " != 0)\n";
  }
  json["gauge"] = gj;

  const bool agree = hodge.holds == deg.degenerates && deg.degenerates == gauge.found;
  json["verdicts"] = {{"hodge_data", hodge.holds},
                      {"degenerates", deg.degenerates},
                      {"gauge_exists", gauge.found},
                      {"agree", agree}};
  c.add("three-way agreement (hodge data, degeneration, gauge)", agree);

  json["checks"] = c.list;
  json["pass"] = c.all;
  text << "checks:\n" << c.text.str();
  text << "verdict: " << (hodge.holds ? "degenerate" : "not degenerate")
       << (agree ? "" : " (VERDICTS DISAGREE)") << "\n";
  if (opts.timing) {
    const double ms = elapsed_ms(start);
    json["timing_ms"] = ms;
    text << "time: " << ms << " ms\n";
  }
  out.json = std::move(json);
  out.text = text.str();
  out.exit_code = c.all ? exit_code::kPass : exit_code::kCheckFailed;
  return out;
}

Report cmd_analyze(const std::string& path, const AnalyzeOptions& opts) {
  return analyze_report(parse_multicomplex(read_file(path)), opts);
}

std::optional<GeometryKind> parse_geometry_kind(const std::string& s) {
  if (s == "poisson") return GeometryKind::Poisson;
  if (s == "jacobi") return GeometryKind::Jacobi;
  if (s == "basic") return GeometryKind::Basic;
  return std::nullopt;
}

namespace {

const char* kind_name(GeometryKind k) {
  switch (k) {
    case GeometryKind::Poisson: return "poisson";
    case GeometryKind::Jacobi: return "jacobi";
    case GeometryKind::Basic: return "basic";
  }
  return "?";
}

// Least k <= limit with order(op) <= k, if any.
// Weight truncation at which the order ladder is decidable.
constexpr int kOrderWindow = 4;

std::optional<int> order_of(const GradedMap& op, const FormAlgebra& a, int limit) {
  for (int k = 0; k <= limit; ++k) {
    if (operator_order(op, a, k)) return k;
  }
  return std::nullopt;
}

std::string order_text(std::optional<int> k, int limit) {
  return k ? std::to_string(*k) : "> " + std::to_string(limit);
}

void add_order_check(Checks& c, Json& orders, const std::string& name, const GradedMap& op,
                     const FormAlgebra& a, int expected_max, bool exact) {
  const int limit = expected_max + 1;
  const auto k = order_of(op, a, limit);
  orders[name] = k ? Json(*k) : Json(nullptr);
  const bool pass = k && (exact ? *k == expected_max : *k <= expected_max);
  c.add("order(" + name + ") " + (exact ? "= " : "<= ") + std::to_string(expected_max), pass,
        nullptr, "order " + order_text(k, limit));
}

}  // namespace

Report geometry_report(const Structure& s, const GeometryOptions& opts) {
  const auto start = Clock::now();
  if (opts.dim < 1 || opts.trunc < 0) throw ParseError("--dim must be positive and --trunc nonnegative");
  if (s.dim != opts.dim) {
    throw ParseError("structure has dim " + std::to_string(s.dim) + " but --dim is " +
                     std::to_string(opts.dim));
  }
  Report out;
  Json json = {{"command", "geometry"},
               {"kind", kind_name(opts.kind)},
               {"dim", opts.dim},
               {"trunc", opts.trunc},
               {"bivector", to_string(s.bivector)},
               {"vector", to_string(s.vector)}};
  std::ostringstream text;
  text << kind_name(opts.kind) << " structure on R^" << opts.dim << ", truncation " << opts.trunc
       << "\n  w = " << to_string(s.bivector) << "\n";
  if (opts.kind != GeometryKind::Poisson) text << "  E = " << to_string(s.vector) << "\n";
  Checks c;

  const FormAlgebra a(opts.dim, opts.trunc);
  text << "forms: " << dims_text(a.space()) << "\n";
  // Structure identities first, with the offending polyvector as witness.
  auto identity = [&](const std::string& name, const PolyVector& defect) {
    c.add(name, defect.is_zero(), defect.is_zero() ? Json(nullptr) : Json(to_string(defect)),
          defect.is_zero() ? "" : "= " + to_string(defect));
  };
  if (opts.kind == GeometryKind::Poisson) {
    identity("[w, w] = 0", schouten(s.bivector, s.bivector));
  } else {
    identity("[w, w] = 2 E^w", schouten(s.bivector, s.bivector) - Scalar(2) * wedge(s.vector, s.bivector));
    identity("[E, w] = 0", schouten(s.vector, s.bivector));
  }

  Multicomplex m;
  if (c.all) {
    try {
      switch (opts.kind) {
        case GeometryKind::Poisson: {
          const GeometricComplex g = poisson_mixed_complex(s.bivector, a);
          m = g.complex;
          c.add("gauge e^{i(w)z} d e^{-i(w)z} = d + Delta z", check_gauge_hodge(g.gauge, m).holds);
          break;
        }
        case GeometryKind::Jacobi: {
          const GeometricComplex g = jacobi_multicomplex(s.bivector, s.vector, a);
          m = g.complex;
          c.add("[i(w), Delta] = 2 i(E) i(w)", true);
          c.add("gauge e^{i(w)z} d e^{-i(w)z} = d + Delta z + i(E)i(w) z^2",
                check_gauge_hodge(g.gauge, m).holds);
          break;
        }
        case GeometryKind::Basic: {
          const BasicComplex b = basic_subcomplex(s.bivector, s.vector, a);
          m = b.complex;
          c.add("basic forms stable under d and Delta", true);
          text << "basic forms: " << dims_text(m.space()) << "\n";
          break;
        }
      }
    } catch (const InvariantViolation& e) {
      c.add("pipeline invariants", false, Json(e.what()), e.what());
    }
  }

  if (c.all) {
    add_relation_checks(c, m);
    if (opts.kind != GeometryKind::Basic) {
      // Orders need room above the operator's weight shift; small
      // truncations are checked on a wider model of the same operators.
      const int order_trunc = std::max(opts.trunc, kOrderWindow);
      const FormAlgebra wide(opts.dim, order_trunc);
      const Multicomplex mw =
          order_trunc == opts.trunc ? m
          : opts.kind == GeometryKind::Poisson
              ? poisson_mixed_complex(s.bivector, wide).complex
              : jacobi_multicomplex(s.bivector, s.vector, wide).complex;
      Json orders = Json::object();
      add_order_check(c, orders, "d", mw.delta(0), wide, 1, true);
      add_order_check(c, orders, "Delta_1", mw.delta(1), wide, 2, false);
      if (opts.kind == GeometryKind::Jacobi) {
        add_order_check(c, orders, "Delta_2", mw.delta(2), wide, 3, false);
      }
      json["orders"] = orders;
      json["order_trunc"] = order_trunc;
    }
    const Degeneration deg = degenerates_at_one(total_complex(m));
    json["degeneration"] = degeneration_json(deg);
    c.add("degenerates at E_1", deg.degenerates, nullptr, degeneration_text(deg));
    Json meta = {{"generator", "geometry"},
                 {"kind", kind_name(opts.kind)},
                 {"dim", opts.dim},
                 {"trunc", opts.trunc},
                 {"structure", structure_to_json(s)}};
    json["multicomplex"] = multicomplex_to_json(m, meta);
  }

  json["checks"] = c.list;
  json["pass"] = c.all;
  text << "checks:\n" << c.text.str() << (c.all ? "all checks pass\n" : "CHECK FAILED\n");
  if (opts.timing) {
    const double ms = elapsed_ms(start);
    json["timing_ms"] = ms;
    text << "time: " << ms << " ms\n";
  }
  out.json = std::move(json);
  out.text = text.str();
  out.exit_code = c.all ? exit_code::kPass : exit_code::kCheckFailed;
  return out;
}

Report cmd_geometry(const std::string& structure_path, const GeometryOptions& opts) {
  return geometry_report(parse_structure(read_file(structure_path)), opts);
}

Json cmd_generate(const std::string& profile, std::uint64_t seed) {
  const GeneratedInstance g = generate(profile, seed);
  Json meta = {{"generator", "hodgecx generate"},
               {"profile", g.profile},
               {"seed", g.seed},
               {"label", g.label},
               {"expect_degenerate", g.expect_degenerate}};
  if (g.gauge) meta["gauge"] = series_to_json(*g.gauge);
  return multicomplex_to_json(g.m, meta);
}

}  // namespace hodge
