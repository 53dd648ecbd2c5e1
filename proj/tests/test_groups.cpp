#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cohn;

namespace {

void agree(const GroupPtr& g, int gens, int len, bool (*trivial)(const oracle::SWord&)) {
  long checked = 0;
  oracle::for_each_word(gens, len, [&](const oracle::SWord& w) {
    Letters l = oracle::to_letters(w);
    Letters nf = g->normalize(l);
    CHECK(nf.empty() == trivial(w));
    CHECK(g->normalize(nf) == nf);
    ++checked;
  });
  CHECK(checked > 0);
}

}  // namespace

TEST_CASE("free group normal form") {
  auto g = fx::free2();
  agree(g, 2, 6, oracle::free_trivial);
  Word w = Word::parse(g, "a b b^-1 a");
  CHECK(normal_form(w).to_string() == "a^2");
}

TEST_CASE("free abelian and its HNN model") {
  agree(fx::z2(), 2, 6, [](const oracle::SWord& w) { return oracle::abelian_trivial(w, 2); });
  agree(fx::z2_hnn(), 2, 6, [](const oracle::SWord& w) { return oracle::abelian_trivial(w, 2); });
}

TEST_CASE("klein bottle") {
  auto g = fx::klein();
  agree(g, 2, 6, oracle::klein_trivial);
  CHECK(normal_form(Word::parse(g, "a z")).to_string() == "z a^-1");
  CHECK(is_trivial(Word::parse(g, "z^-1 a z a")));
}

TEST_CASE("trefoil with explicit transversals") {
  auto g = fx::trefoil();
  agree(g, 2, 6, oracle::trefoil_trivial);
  CHECK(g->coset(0).index() == 2);
  CHECK(g->coset(1).index() == 3);
  CHECK(is_trivial(Word::parse(g, "a^2 b^-3")));
}

TEST_CASE("finite group") {
  auto g = fx::s3();
  std::vector<int> elems;
  std::function<void()> rec = [&] {
    Letters l;
    for (int e : elems) l.push_back({e, 1});
    CHECK(g->normalize(l).empty() == oracle::s3_trivial(elems));
    if (elems.size() == 4) return;
    for (int e = 1; e <= 5; ++e) {
      elems.push_back(e);
      rec();
      elems.pop_back();
    }
  };
  rec();
}

TEST_CASE("finite edge amalgam is SL(2,Z)") {
  auto g = fx::sl2z();
  const oracle::M2 S{0, -1, 1, 0}, T{0, -1, 1, 1}, I{1, 0, 0, 1};
  // letters: generators 1..3 are s^i, 5..9 are t^j
  std::vector<int> w;
  std::function<void()> rec = [&] {
    Letters l;
    oracle::M2 m = I;
    for (int x : w) {
      l.push_back({x, 1});
      m = oracle::mul(m, x < 4 ? oracle::sl2_power(S, x) : oracle::sl2_power(T, x - 4));
    }
    CHECK(g->normalize(l).empty() == (m == I));
    if (w.size() == 4) return;
    for (int x : {1, 2, 3, 5, 6, 7, 8, 9}) {
      w.push_back(x);
      rec();
      w.pop_back();
    }
  };
  rec();
}

TEST_CASE("genus two surface group relation") {
  auto g = fx::genus2();
  CHECK(is_trivial(Word::parse(g, "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1")));
  CHECK_FALSE(is_trivial(Word::parse(g, "a1 b1 a1^-1 b1^-1 b2 a2 b2^-1 a2^-1")));
  CHECK(g->coset(0).edge_class() == EdgeClass::CyclicFree);
  // normal form is a canonical representative
  Word x = Word::parse(g, "a1 a2 b1 b2");
  Word y = multiply(x, Word::parse(g, "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"));
  CHECK(normal_form(y) == normal_form(x));
}

TEST_CASE("bad inputs") {
  using nlohmann::json;
  CHECK_THROWS_AS(group_from_json(json::parse(R"({"type":"free","labels":["a","a"]})")), Error);
  CHECK_THROWS_AS(Word::parse(fx::free2(), "c"), Error);
  // non-injective lattice edge
  CHECK_THROWS_AS(group_from_json(json::parse(R"({
    "type":"hnn","base":{"type":"free_abelian","labels":["a","b"]},
    "edge_group":{"type":"free_abelian","labels":["s","t"]},
    "alpha":{"images":["a","a^2"]},"beta":{"images":["a","b"]}})")), Error);
  // transversal missing the identity
  CHECK_THROWS_AS(group_from_json(json::parse(R"({
    "type":"amalgam","left":{"type":"free","labels":["a"]},"right":{"type":"free","labels":["b"]},
    "edge":{"group":{"type":"free","labels":["c"]},"left_images":["a^2"],"right_images":["b^3"],
            "left_transversal":["a","a^2"]}})")), Error);
}

TEST_CASE("fingerprint tracks transversals") {
  using nlohmann::json;
  auto a = fx::trefoil();
  auto b = group_from_json(json::parse(R"({
    "type":"amalgam","left":{"type":"free","labels":["a"]},"right":{"type":"free","labels":["b"]},
    "edge":{"group":{"type":"free","labels":["c"]},"left_images":["a^2"],"right_images":["b^3"]}})"));
  CHECK_FALSE(a->same_as(*b));
  CHECK(group_from_json(a->descriptor_json())->same_as(*a));
}
