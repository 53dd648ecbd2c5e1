// Acceptance runner: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cohn/assembly.hpp"
#include "cohn/cwpairs.hpp"
#include "cohn/findom.hpp"
#include "cohn/trimat.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_util.hpp"

using namespace cohn;
using nlohmann::json;

namespace {

const std::string data_dir = COHN_DATA_DIR;

json load(const std::string& rel) {
  std::ifstream in(data_dir + "/" + rel);
  if (!in) throw std::runtime_error("cannot open " + rel);
  return json::parse(in);
}

RingPtr laurent_ring(const char* k) {
  return make_ring(group_from_json(json::parse(R"({"type":"free","labels":["z"]})")), CoeffDomain::parse(k));
}

RMatrix entry(const RingPtr& r, const char* text) {
  RMatrix m = zero_matrix(r, 1, 1);
  m(0, 0) = parse_element(r, text);
  return m;
}

FreeChainComplex two_term(const RingPtr& L, const RMatrix& d) { return FreeChainComplex::make(L, {d.cols(), d.rows()}, {d}); }

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(COHN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot start cli");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

// --- 1 ---------------------------------------------------------------------------

std::size_t disagreements(const GroupPtr& g, int gens, int len, const std::function<bool(const oracle::SWord&)>& trivial) {
  std::size_t bad = 0;
  oracle::for_each_word(gens, len, [&](const oracle::SWord& w) {
    if (g->normalize(oracle::to_letters(w)).empty() != trivial(w)) ++bad;
  });
  return bad;
}

std::string word_problem() {
  std::size_t bad = 0, words = 0;
  auto count = [&](int gens, int len) {
    std::size_t n = 0, p = 1;
    for (int l = 0; l <= len; ++l, p *= static_cast<std::size_t>(2 * gens)) n += p;
    return n;
  };
  bad += disagreements(fx::trefoil(), 2, 8, oracle::trefoil_trivial);
  bad += disagreements(fx::klein(), 2, 8, oracle::klein_trivial);
  bad += disagreements(fx::free2(), 2, 8, oracle::free_trivial);
  bad += disagreements(fx::z2(), 2, 8, [](const oracle::SWord& w) { return oracle::abelian_trivial(w, 2); });
  words += 4 * count(2, 8);
  // S3: words in the five non-identity elements
  auto s3 = fx::s3();
  std::vector<int> elems;
  std::function<void()> rec = [&] {
    Letters l;
    for (int e : elems) l.push_back({e, 1});
    ++words;
    if (s3->normalize(l).empty() != oracle::s3_trivial(elems)) ++bad;
    if (elems.size() == 8) return;
    for (int e = 1; e <= 5; ++e) {
      elems.push_back(e);
      rec();
      elems.pop_back();
    }
  };
  rec();
  if (bad) throw std::runtime_error(std::to_string(bad) + " disagreements");
  return std::to_string(words) + " words, 0 disagreements";
}

// --- 2 ---------------------------------------------------------------------------

TriElement random_tri(std::mt19937_64& rng, const TriangularRing& A) {
  TriElement e = A.zero();
  for (std::size_t i = 0; i < A.size(); ++i) e.diag[i] = rnd::element(rng, A.diagonal()[i]);
  for (auto& c : e.corner) c = rnd::element(rng, c.ring());
  return e;
}

std::string localization() {
  std::mt19937_64 rng(13);
  std::size_t products = 0, inverses = 0;
  for (const char* name : {"laurent", "klein", "trefoil", "genus2"}) {
    TriPtr A = triangular_from_json(load(std::string("rings/") + name + ".json"));
    std::vector<std::pair<TriElement, TriElement>> pairs;
    for (int t = 0; t < 25; ++t) pairs.emplace_back(random_tri(rng, *A), random_tri(rng, *A));
    auto r = check_entry_maps(*A, pairs);
    if (!r.failures.empty()) throw std::runtime_error(std::string(name) + ": " + r.failures.front());
    products += pairs.size();
    LocalizationData L = localize(*A);
    if (!L.report.failures.empty()) throw std::runtime_error(std::string(name) + ": " + L.report.failures.front());
    for (std::size_t k = 0; k < L.sigma_images.size(); ++k) {
      const RingElement &s = L.sigma_images[k], &t = L.certified_inverses[k];
      if (!(s * t).is_one() || !(t * s).is_one()) throw std::runtime_error(std::string(name) + ": sigma inverse");
      ++inverses;
    }
  }
  return std::to_string(products) + " products, " + std::to_string(inverses) + " inverses";
}

// --- 3 ---------------------------------------------------------------------------

std::string hom() {
  std::size_t checked = 0;
  auto expect = [&](const TriangularRing& A, std::size_t i, std::size_t j, const std::string& name) {
    auto d = hom_columns(A, i, j);
    bool ok = name == "0" ? d.zero : (!d.zero && d.name == name);
    if (!ok) throw std::runtime_error("Hom(P" + std::to_string(i) + ",P" + std::to_string(j) + ") = " + d.name);
    ++checked;
  };
  for (const char* name : {"laurent", "klein", "torus_hyperbolic"}) {
    TriPtr A = triangular_from_json(load(std::string("rings/") + name + ".json"));
    expect(*A, 1, 1, "R");
    expect(*A, 2, 2, "S");
    expect(*A, 1, 2, "R_alpha + R_beta");
    expect(*A, 2, 1, "0");
  }
  for (const char* name : {"trefoil", "genus2"}) {
    TriPtr A = triangular_from_json(load(std::string("rings/") + name + ".json"));
    expect(*A, 1, 1, "R1");
    expect(*A, 2, 2, "R2");
    expect(*A, 3, 3, "S");
    expect(*A, 1, 3, "R1");
    expect(*A, 2, 3, "R2");
    for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 1}, {3, 2}})
      expect(*A, static_cast<std::size_t>(i), static_cast<std::size_t>(j), "0");
  }
  return std::to_string(checked) + " hom modules";
}

// --- 4 ---------------------------------------------------------------------------

std::string geometric() {
  for (const char* name : {"circle", "torus"}) {
    int status = 0;
    json out = json::parse(run_cli(std::string("cw-assemble --pair ") + data_dir + "/pairs/" + name + ".json", status));
    if (status != 0 || out.at("matches_direct") != true || out.at("ok") != true)
      throw std::runtime_error(std::string(name) + " does not match the direct complex");
  }
  std::vector<std::pair<const char*, std::vector<std::size_t>>> expected = {{"genus2", {1, 4, 1}},
                                                                          {"figure_eight", {1, 2}}};
  for (const auto& [name, ranks] : expected) {
    CWReport rep = cw_assemble(CWPairSpec::from_json(load(std::string("pairs/") + name + ".json")));
    HomologySummary h = homology(augmented(rep.assembly.complex));
    std::vector<std::size_t> got;
    for (const auto& g : h.groups) {
      if (!g.torsion.empty()) throw std::runtime_error(std::string(name) + ": unexpected torsion");
      got.push_back(g.rank);
    }
    while (got.size() > ranks.size() && got.back() == 0) got.pop_back();
    if (got != ranks || !rep.ok()) throw std::runtime_error(std::string(name) + ": homology mismatch");
  }
  return "circle, torus match Fox complexes; genus 2 (1,4,1), figure eight (1,2)";
}

// --- 5 ---------------------------------------------------------------------------

std::string presentations() {
  std::mt19937_64 rng(2025);
  std::size_t n = 0;
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    for (int t = 0; t < 500; ++t, ++n) {
      auto C = rnd::bounded_complex(rng, L, 4, 3);
      auto P = mv_construct_laurent(C);
      if (!verify_certificate(P.E_up, P.D_up, P.coker, P.cert)) throw std::runtime_error("certificate rejected");
      if (!mv_verify(P, C)) throw std::runtime_error("presentation rejected");
      for (int r = 0; r <= C.top(); ++r)
        if (P.D.rank(r) != C.rank(r) + P.E.rank(r)) throw std::runtime_error("rank identity");
    }
  }
  return std::to_string(n) + " complexes";
}

// --- 6 ---------------------------------------------------------------------------

std::string domination() {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coin(0, 3);
  std::size_t yes = 0, n = 0;
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    for (int t = 0; t < 500; ++t, ++n) {
      std::size_t m = 1 + static_cast<std::size_t>(t % 4);
      RMatrix d = zero_matrix(L, m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (coin(rng)) d(i, j) = rnd::laurent(rng, L, -1, 3, false);
      bool got = fredholm_test(two_term(L, d)).dominated;
      if (got != domination_oracle_1dim(d)) throw std::runtime_error("disagreement");
      yes += got;
    }
  }
  RingPtr L = laurent_ring("Q");
  auto c = fredholm_test(two_term(L, entry(L, "z - 1")));
  if (!c.dominated || c.novikov_dims != std::vector<std::size_t>{0, 0}) throw std::runtime_error("circle");
  return std::to_string(n) + " complexes (" + std::to_string(yes) + " dominated), circle dominated";
}

// --- 7 ---------------------------------------------------------------------------

Matrix<RatFunc> random_rebase(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<long> c(-2, 2);
  Matrix<RatFunc> P = Matrix<RatFunc>::identity(n, RatFunc::constant(p, 0), RatFunc::constant(p, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) P(i, j) = RatFunc::constant(p, Coeff(mpq_class(c(rng)), p));
  return P;
}

FreeChainComplex sum(const FreeChainComplex& a, const FreeChainComplex& b) {
  int top = std::max(a.top(), b.top());
  auto rank = [](const FreeChainComplex& c, int r) { return r <= c.top() ? c.rank(r) : std::size_t{0}; };
  std::vector<std::size_t> ranks;
  for (int r = 0; r <= top; ++r) ranks.push_back(rank(a, r) + rank(b, r));
  std::vector<RMatrix> ds;
  for (int r = 1; r <= top; ++r) {
    RMatrix d = zero_matrix(a.ring, ranks[static_cast<std::size_t>(r)], ranks[static_cast<std::size_t>(r - 1)]);
    if (r <= a.top()) d.set_block(0, 0, a.diff(r));
    if (r <= b.top()) d.set_block(rank(a, r), rank(a, r - 1), b.diff(r));
    ds.push_back(d);
  }
  return FreeChainComplex::make(a.ring, ranks, ds);
}

// Sign of the permutation taking the cells of A + B, ordered degreewise with
// A first, to all cells of A followed by all cells of B, separately on the odd
// and the even degrees.
int shuffle_sign(const FreeChainComplex& a, const FreeChainComplex& b) {
  auto rank = [](const FreeChainComplex& c, int r) { return r <= c.top() ? c.rank(r) : std::size_t{0}; };
  int top = std::max(a.top(), b.top());
  std::size_t inversions = 0;
  for (int i = 0; i <= top; ++i)
    for (int j = i + 2; j <= top; j += 2) inversions += rank(b, i) * rank(a, j);
  return inversions % 2 ? -1 : 1;
}

std::string torsion_checks() {
  std::mt19937_64 rng(77);
  std::size_t n = 0;
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    std::uint32_t p = L->coeffs.modulus();
    auto one = RatFunc::constant(p, 1);
    for (int t = 0; t < 50; ++t, ++n) {
      auto C = rnd::laurent_complex(rng, L, 1 + t % 3, 3, true, 2);
      auto F = fraction_complex(C);
      std::vector<Matrix<RatFunc>> P, Pi;
      for (int r = 0; r <= C.top(); ++r) {
        P.push_back(random_rebase(rng, C.rank(r), p));
        Pi.push_back(*solve_left(P.back(), Matrix<RatFunc>::identity(C.rank(r), P.back().zero(), one), one));
      }
      auto G = F;
      for (int r = 1; r <= C.top(); ++r) G.d[r] = P[r] * F.d[r] * Pi[r - 1];
      auto sG = find_contraction(G);
      if (!sG) throw std::runtime_error("no contraction");
      Contraction<RatFunc> s2;
      for (int r = 0; r < C.top(); ++r) s2.s.push_back(Pi[r] * sG->s[r] * P[r + 1]);
      if (!verify_contraction(F, s2)) throw std::runtime_error("transported contraction");
      if (!(torsion(C) == torsion_with(C, s2))) throw std::runtime_error("contraction dependence");
    }
    for (int t = 0; t < 20; ++t) {
      auto A = rnd::laurent_complex(rng, L, 1 + t % 2, 2, true, 2);
      auto B = rnd::laurent_complex(rng, L, 1 + t % 2, 2, true, 2);
      auto s = torsion(sum(A, B)).value, prod = torsion(A).value * torsion(B).value;
      if (shuffle_sign(A, B) < 0) prod = -prod;
      if (!(s == prod)) throw std::runtime_error("additivity: " + s.to_string() + " vs " + prod.to_string());
    }
  }
  RingPtr L = laurent_ring("Q");
  auto a = torsion(two_term(L, entry(L, "z - 1"))), b = torsion(two_term(L, entry(L, "z")));
  if (a.trivial() || !b.trivial() || a.same_class(b) || a.normalized.to_string() != "z - 1")
    throw std::runtime_error("z - 1 against z");
  return std::to_string(n) + " contraction pairs, additivity, z - 1 nontrivial, z trivial";
}

// --- 8 ---------------------------------------------------------------------------

std::string duality() {
  json plain = load("rings/torus_hyperbolic.json");
  plain["form"] = json::parse(R"({"beta": [["1", "0"], ["0", "1"]], "beta_inverse": [["1", "0"], ["0", "1"]]})");
  std::size_t n = 0;
  for (const json& j : {load("rings/torus_hyperbolic.json"), plain}) {
    TriPtr A = triangular_from_json(j);
    RingPtr R = A->diagonal()[0];
    TriModule P1 = column_module(*A, 1), P2 = column_module(*A, 2);
    RMatrix x12 = zero_matrix(R, 3, 2);
    x12.set_block(1, 0, identity_matrix(R, 2));
    std::vector<std::pair<TriModule, RMatrix>> cases = {
        {P1, zero_matrix(R, 1, 0)}, {P2, identity_matrix(R, 2)}, {direct_sum(*A, P1, P2), x12}};
    for (const auto& [M, x] : cases) {
      auto bad = verify_equivalence(*A, M, double_dual_equivalence(*A, M, x));
      if (!bad.empty()) throw std::runtime_error(bad.front());
      ++n;
    }
  }
  return std::to_string(n) + " equivalences";
}

// --- 9 ---------------------------------------------------------------------------

std::string determinism() {
  int s1 = 0, s2 = 0;
  std::string corpus = data_dir + "/corpus.json";
  std::string a = run_cli("corpus --corpus " + corpus, s1), b = run_cli("corpus --corpus " + corpus, s2);
  if (s1 != 0 || s2 != 0) throw std::runtime_error("corpus exited with an error");
  if (a != b) throw std::runtime_error("outputs differ");
  if (json::parse(a).at("all_passed") != true) throw std::runtime_error("corpus checks failed");
  return std::to_string(a.size()) + " identical bytes";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"word problem against oracles", word_problem},
      {"localization identification", localization},
      {"hom between column modules", hom},
      {"geometric assembly", geometric},
      {"mayer-vietoris presentations", presentations},
      {"finite domination", domination},
      {"torsion", torsion_checks},
      {"chain duality", duality},
      {"corpus determinism", determinism},
  };
  int failed = 0, i = 0;
  for (const auto& [name, f] : criteria) {
    ++i;
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = f();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  " << i << ". " << name << ": " << detail << " (" << std::fixed
         << std::setprecision(1) << secs << "s)";
    std::cout << line.str() << std::endl;
    failed += !ok;
  }
  return failed ? 1 : 0;
}
