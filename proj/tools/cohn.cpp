#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "cohn/assembly.hpp"
#include "cohn/cwpairs.hpp"
#include "cohn/findom.hpp"
#include "cohn/trimat.hpp"

using namespace cohn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string group, word, ring, complex, pair, field, presentation, corpus, mode;
  fs::path base;
};

struct Outcome {
  json payload;
  bool passed = true;
};

// Input problems: exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path resolve(const Options& o, const std::string& p) {
  if (p.empty()) throw InputError("missing input path");
  fs::path path(p);
  return path.is_absolute() || o.base.empty() ? path : o.base / path;
}

json read_json(const Options& o, const std::string& p) {
  fs::path path = resolve(o, p);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

FreeChainComplex read_complex(const Options& o) {
  json j = read_json(o, o.complex);
  if (!o.field.empty()) {
    CoeffDomain::parse(o.field);
    j["ring"]["coefficients"] = o.field;
  }
  return complex_from_json(j);
}

json stamp(json j) {
  j["format_version"] = 1;
  return j;
}

// --- subcommands ----------------------------------------------------------------

Outcome normal_form_cmd(const Options& o) {
  GroupPtr g = group_from_json(read_json(o, o.group));
  Word w = Word::parse(g, o.word);
  Word n = normal_form(w);
  return {stamp({{"word", o.word}, {"normal_form", n.to_string()}, {"trivial", n.empty()}}), true};
}

// product of parenthesised factors, e.g. "(1 + a) * (z - 1)"
RingElement evaluate(const RingPtr& r, const std::string& text) {
  RingElement acc = RingElement::one(r);
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '*')) ++i;
    if (i >= text.size()) break;
    std::string factor;
    if (text[i] == '(') {
      auto close = text.find(')', i);
      if (close == std::string::npos) throw InputError("unbalanced parenthesis");
      factor = text.substr(i + 1, close - i - 1);
      i = close + 1;
    } else {
      factor = text.substr(i);
      i = text.size();
    }
    acc = acc * parse_element(r, factor);
    any = true;
  }
  return any ? acc : RingElement(r);
}

Outcome ring_eval_cmd(const Options& o) {
  json j = read_json(o, o.ring);
  RingPtr r = j.contains("kind") ? triangular_from_json(j)->target() : ring_from_json(j);
  RingElement a = evaluate(r, o.word);
  return {stamp({{"ring", ring_to_json(*r)},
                 {"value", a.to_string()},
                 {"involution", involute(a).to_string()},
                 {"augmentation", augment(a).to_string()},
                 {"terms", element_to_json(a, false)}}),
          true};
}

TriElement random_tri(std::mt19937_64& rng, const TriangularRing& A) {
  std::uniform_int_distribution<int> nt(0, 3), len(0, 3), sg(0, 1);
  std::uniform_int_distribution<long> cf(-3, 3);
  auto element = [&](const RingPtr& r) {
    RingElement e(r);
    int gens = static_cast<int>(r->group->generator_count());
    for (int t = nt(rng); t > 0; --t) {
      Letters w;
      if (gens > 0) {
        std::uniform_int_distribution<int> g(0, gens - 1);
        for (int k = len(rng); k > 0; --k) w.push_back({g(rng), sg(rng) ? 1 : -1});
      }
      e += RingElement::monomial(r, r->group->normalize(w), Coeff::in(r->coeffs, cf(rng)));
    }
    return e;
  };
  TriElement x = A.zero();
  for (std::size_t i = 0; i < A.size(); ++i) x.diag[i] = element(A.diagonal()[i]);
  for (auto& c : x.corner) c = element(c.ring());
  return x;
}

Outcome localize_cmd(const Options& o) {
  TriPtr A = triangular_from_json(read_json(o, o.ring));
  LocalizationData L = localize(*A);
  std::mt19937_64 rng(1);
  std::vector<std::pair<TriElement, TriElement>> pairs;
  for (int t = 0; t < 20; ++t) pairs.emplace_back(random_tri(rng, *A), random_tri(rng, *A));
  ValidationReport entries = check_entry_maps(*A, pairs);
  json hom = json::array();
  for (std::size_t i = 1; i <= A->size(); ++i)
    for (std::size_t j = 1; j <= A->size(); ++j) {
      auto d = hom_columns(*A, i, j);
      hom.push_back({{"from", i}, {"to", j}, {"module", d.name}});
    }
  bool ok = L.report.ok() && entries.ok();
  json out = {{"ring", A->to_json()},
              {"localization", L.to_json()},
              {"entry_maps", {{"verified", entries.verified}, {"failures", entries.failures}}},
              {"hom", hom}};
  if (A->form()) {
    RingPtr R = A->diagonal()[0];
    TriModule P1 = column_module(*A, 1), P2 = column_module(*A, 2);
    RMatrix x12 = zero_matrix(R, 3, 2);
    x12.set_block(1, 0, identity_matrix(R, 2));
    std::vector<std::pair<TriModule, RMatrix>> cases = {
        {P1, zero_matrix(R, 1, 0)}, {P2, identity_matrix(R, 2)}, {direct_sum(*A, P1, P2), x12}};
    bool dual = true;
    for (const auto& [M, x] : cases) dual = dual && verify_equivalence(*A, M, double_dual_equivalence(*A, M, x)).empty();
    out["duality"] = dual;
    ok = ok && dual;
  }
  out["ok"] = ok;
  return {stamp(out), ok};
}

Outcome assemble_cmd(const Options& o) {
  CWPairSpec p = CWPairSpec::from_json(read_json(o, o.pair));
  AssemblyResult a = assemble(geometric_assembly_inputs(p));
  return {stamp(a.to_json()), a.report.ok()};
}

Outcome cw_assemble_cmd(const Options& o) {
  CWPairSpec p = CWPairSpec::from_json(read_json(o, o.pair));
  CWReport r = cw_assemble(p);
  json out = r.to_json();
  out["name"] = p.name;
  out["group"] = group_to_json(*r.assembly.complex.ring->group);
  return {stamp(out), r.ok()};
}

Outcome mv_cmd(const Options& o) {
  FreeChainComplex C = read_complex(o);
  if (o.mode == "construct") {
    MVPresentation P = mv_construct_laurent(C);
    return {stamp(P.to_json()), true};
  }
  if (o.mode == "verify") {
    MVPresentation P = MVPresentation::from_json(read_json(o, o.presentation));
    bool ok = mv_verify(P, C);
    return {stamp({{"verified", ok}}), ok};
  }
  if (o.mode == "roundtrip") {
    MVPresentation P = MVPresentation::from_json(json::parse(mv_construct_laurent(C).to_json().dump()));
    bool ok = mv_verify(P, C);
    json ranks = json::array();
    for (int r = 0; r <= C.top(); ++r) ranks.push_back({P.D.rank(r), C.rank(r), P.E.rank(r)});
    return {stamp({{"verified", ok}, {"ranks_D_C_E", ranks}}), ok};
  }
  throw InputError("mv mode must be construct, verify or roundtrip");
}

Outcome findom_cmd(const Options& o) {
  DominationVerdict v = fredholm_test(read_complex(o));
  return {stamp({{"dominated", v.dominated}, {"novikov_dims", v.novikov_dims}}), true};
}

Outcome torsion_cmd(const Options& o) {
  FreeChainComplex C = read_complex(o);
  DominationVerdict v = fredholm_test(C);
  if (!v.dominated) return {stamp({{"acyclic", false}, {"torsion", nullptr}, {"novikov_dims", v.novikov_dims}}), false};
  return {stamp({{"acyclic", true}, {"torsion", torsion(C).to_json()}}), true};
}

Outcome run(const std::string& cmd, const Options& o);

bool contains_expected(const json& got, const json& want) {
  if (want.is_object()) {
    if (!got.is_object()) return false;
    for (const auto& [k, v] : want.items())
      if (!got.contains(k) || !contains_expected(got[k], v)) return false;
    return true;
  }
  return got == want;
}

Outcome corpus_cmd(const Options& o) {
  fs::path file = o.corpus.empty() ? fs::path("data/corpus.json") : fs::path(o.corpus);
  if (o.corpus.empty() && !fs::exists(file)) file = fs::path(COHN_DATA_DIR) / "corpus.json";
  Options base;
  json spec = read_json(base, file.string());
  base.base = file.parent_path();
  json rows = json::array();
  std::size_t passed = 0;
  for (const auto& c : spec.at("checks")) {
    Options co = base;
    co.group = c.value("group", "");
    co.word = c.value("word", "");
    co.ring = c.value("ring", "");
    co.complex = c.value("complex", "");
    co.pair = c.value("pair", "");
    co.field = c.value("field", "");
    co.mode = c.value("mode", "");
    std::string cmd = c.at("command").get<std::string>();
    json row = {{"name", c.at("name")}, {"command", cmd}};
    try {
      Outcome r = run(cmd, co);
      bool ok = r.passed && contains_expected(r.payload, c.at("expect"));
      row["passed"] = ok;
      if (!ok) row["got"] = r.payload;
    } catch (const std::exception& e) {
      row["passed"] = false;
      row["error"] = e.what();
    }
    passed += row["passed"].get<bool>();
    std::cerr << (row["passed"].get<bool>() ? "PASS  " : "FAIL  ") << cmd << "  " << c.at("name").get<std::string>()
              << "\n";
    rows.push_back(row);
  }
  bool all = passed == rows.size();
  return {stamp({{"checks", rows}, {"passed", passed}, {"total", rows.size()}, {"all_passed", all}}), all};
}

Outcome run(const std::string& cmd, const Options& o) {
  if (cmd == "normal-form") return normal_form_cmd(o);
  if (cmd == "ring-eval") return ring_eval_cmd(o);
  if (cmd == "localize-check") return localize_cmd(o);
  if (cmd == "assemble") return assemble_cmd(o);
  if (cmd == "cw-assemble") return cw_assemble_cmd(o);
  if (cmd == "mv") return mv_cmd(o);
  if (cmd == "findom") return findom_cmd(o);
  if (cmd == "torsion") return torsion_cmd(o);
  if (cmd == "corpus") return corpus_cmd(o);
  throw InputError("unknown command " + cmd);
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotSplitInjective:
    case ErrorKind::NotAcyclic:
    case ErrorKind::NotAUnit:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohn localization workbench: group rings, triangular matrix rings, assembly and finite domination"};
  app.require_subcommand(1);
  Options o;
  std::string output;
  bool check = false;
  auto common = [&](CLI::App* s) {
    s->add_option("--output", output, "write JSON here instead of standard output");
    s->add_flag("--check", check, "exit with status 3 when verification fails");
  };
  auto* nf = app.add_subcommand("normal-form", "normal form of a word");
  nf->add_option("--group", o.group, "group descriptor JSON")->required();
  nf->add_option("--word", o.word, "word, e.g. \"a^2 b^-3\"")->required();
  auto* re = app.add_subcommand("ring-eval", "evaluate a product of group ring elements");
  re->add_option("--ring", o.ring, "ring JSON (or triangular ring JSON: its target ring)")->required();
  re->add_option("--word", o.word, "expression, e.g. \"(1 + a) * (z - 1)\"")->required();
  auto* lc = app.add_subcommand("localize-check", "build the triangular ring and verify the localization");
  lc->add_option("--ring", o.ring, "triangular ring JSON")->required();
  auto* as = app.add_subcommand("assemble", "assemble a CW pair, with certificate");
  as->add_option("--pair", o.pair, "CW pair JSON")->required();
  auto* cw = app.add_subcommand("cw-assemble", "full CW pair pipeline with checks");
  cw->add_option("--pair", o.pair, "CW pair JSON")->required();
  auto* mv = app.add_subcommand("mv", "Mayer-Vietoris presentations over a Laurent ring");
  mv->require_subcommand(1);
  auto* mvc = mv->add_subcommand("construct", "construct a presentation");
  auto* mvv = mv->add_subcommand("verify", "verify a presentation");
  for (auto* s : {mvc, mvv}) {
    s->add_option("--complex", o.complex, "complex JSON")->required();
    s->add_option("--field", o.field, "override coefficients: Q or Fp:<p>");
    common(s);
  }
  mvv->add_option("--presentation", o.presentation, "presentation JSON")->required();
  auto* fd = app.add_subcommand("findom", "finite domination over k(z)");
  auto* ts = app.add_subcommand("torsion", "torsion over k(z)");
  for (auto* s : {fd, ts}) {
    s->add_option("--complex", o.complex, "complex JSON")->required();
    s->add_option("--field", o.field, "override coefficients: Q or Fp:<p>");
  }
  auto* co = app.add_subcommand("corpus", "run the curated example suite");
  co->add_option("--corpus", o.corpus, "corpus JSON (default data/corpus.json)");
  for (auto* s : {nf, re, lc, as, cw, fd, ts, co}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "mv") o.mode = mv->get_subcommands().front()->get_name();
  Outcome out;
  try {
    out = run(cmd, o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (is_input_error(e.kind())) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    out = {{{"format_version", 1}, {"failed", std::string(to_string(e.kind()))}, {"message", e.what()}}, false};
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string text = out.payload.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
    f << text;
  }
  return check && !out.passed ? 3 : 0;
}
