#include "doctest.h"
#include "fixtures.hpp"
#include "random_util.hpp"

using namespace cohn;

namespace {

RingElement w(const RingPtr& r, const std::string& s, long c = 1) { return RingElement::parse_word(r, s, c); }

}  // namespace

TEST_CASE("ring arithmetic examples") {
  auto f1 = make_ring(Group::free({"x"}), CoeffDomain::integers());
  auto one = RingElement::one(f1);
  CHECK((one + w(f1, "x")) * (one - w(f1, "x")) == one - w(f1, "x^2"));

  auto k = make_ring(fx::klein(), CoeffDomain::integers());
  RingElement az = w(k, "a") * w(k, "z");
  REQUIRE(az.terms().size() == 1);
  CHECK(format_letters(*k->group, az.terms().begin()->first) == "z a^-1");

  auto f2 = make_ring(fx::free2(), CoeffDomain::integers());
  CHECK((RingElement::constant(f2, 2) + w(f2, "b")) + (RingElement::constant(f2, -2) + w(f2, "b")) == w(f2, "b", 2));
  CHECK(involute(w(f2, "a") + w(f2, "b", 2)) == w(f2, "a^-1") + w(f2, "b^-1", 2));
  CHECK(involute(w(f2, "a") * w(f2, "b")) == w(f2, "b^-1") * w(f2, "a^-1"));
  CHECK(augment(RingElement::constant(f2, 2) + w(f2, "a", 3)) == Coeff(5));
  CHECK(augment(w(f2, "a") - w(f2, "b")).is_zero());
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(7);
  std::vector<RingPtr> rings{make_ring(fx::free2(), CoeffDomain::integers()),
                             make_ring(fx::klein(), CoeffDomain::rationals()),
                             make_ring(fx::trefoil(), CoeffDomain::prime_field(5)),
                             make_ring(fx::genus2(), CoeffDomain::integers()),
                             make_ring(fx::s3(), CoeffDomain::integers())};
  for (const auto& r : rings) {
    auto one = RingElement::one(r);
    for (int i = 0; i < 200; ++i) {
      auto a = rnd::element(rng, r), b = rnd::element(rng, r), c = rnd::element(rng, r);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * one == a);
      CHECK(one * a == a);
      CHECK(involute(a + b) == involute(a) + involute(b));
      CHECK(involute(a * b) == involute(b) * involute(a));
      CHECK(involute(involute(a)) == a);
      CHECK(involute(one) == one);
      CHECK(augment(a * b) == augment(a) * augment(b));
    }
  }
}

TEST_CASE("morphisms") {
  auto f1 = make_ring(Group::free({"x"}), CoeffDomain::integers());
  auto triv = make_ring(Group::trivial(), CoeffDomain::integers());
  auto aug = RingMorphism::make(f1, triv, {{}});
  CHECK(apply_morphism(aug, w(f1, "x") + RingElement::constant(f1, 2)) == RingElement::constant(triv, 3));

  auto s = make_ring(Group::free({"s"}), CoeffDomain::integers());
  auto a = make_ring(Group::free({"a"}), CoeffDomain::integers());
  auto i1 = RingMorphism::make(s, a, {{{0, 2}}});
  CHECK(apply_morphism(i1, w(s, "s") - RingElement::one(s)) == w(a, "a^2") - RingElement::one(a));

  auto tor = make_ring(fx::z2_hnn(), CoeffDomain::integers());
  auto inc = RingMorphism::make(a, tor, {{{0, 1}}});
  CHECK(apply_morphism(inc, w(a, "a")) == w(tor, "a"));

  // relators are checked: x, y -> a, z in the Klein group does not come from Z^2
  auto z2 = make_ring(fx::z2(), CoeffDomain::integers());
  auto k = make_ring(fx::klein(), CoeffDomain::integers());
  CHECK_THROWS_AS(RingMorphism::make(z2, k, {{{0, 1}}, {{1, 1}}}), Error);

  std::mt19937_64 rng(11);
  auto f2 = make_ring(fx::free2(), CoeffDomain::integers());
  auto g2 = make_ring(fx::genus2(), CoeffDomain::integers());
  auto m = RingMorphism::make(f2, g2, {{{0, 1}, {2, 1}}, {{1, -1}}});
  for (int i = 0; i < 100; ++i) {
    auto x = rnd::element(rng, f2), y = rnd::element(rng, f2);
    CHECK(apply_morphism(m, x * y) == apply_morphism(m, x) * apply_morphism(m, y));
    CHECK(apply_morphism(m, x + y) == apply_morphism(m, x) + apply_morphism(m, y));
  }
}

TEST_CASE("mixed rings and json") {
  auto f2 = make_ring(fx::free2(), CoeffDomain::integers());
  auto k = make_ring(fx::klein(), CoeffDomain::integers());
  CHECK_THROWS_AS(w(f2, "a") + w(k, "a"), Error);
  auto e = w(f2, "a^2 b^-1", 3) - RingElement::one(f2);
  auto j = element_to_json(e);
  CHECK(j["terms"][0]["word"] == "");
  CHECK(j["terms"][1]["coeff"] == "3");
  CHECK(element_from_json(j) == e);
}

TEST_CASE("text form round trip") {
  std::mt19937_64 rng(5);
  auto k = make_ring(fx::klein(), CoeffDomain::rationals());
  for (int i = 0; i < 200; ++i) {
    auto a = rnd::element(rng, k);
    CHECK(parse_element(k, a.to_string()) == a);
  }
  auto lz = make_ring(fx::laurent(), CoeffDomain::integers());
  CHECK(parse_element(lz, "z - 1") == w(lz, "z") - RingElement::one(lz));
  CHECK(parse_element(lz, "-2*z^-1 + 3").to_string() == "3 - 2*z^-1");
}
