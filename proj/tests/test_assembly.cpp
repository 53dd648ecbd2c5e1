#include <doctest.h>

#include <fstream>
#include <random>

#include "cohn/assembly.hpp"
#include "cohn/cwpairs.hpp"
#include "random_util.hpp"

using namespace cohn;
using nlohmann::json;

namespace {

RingPtr laurent_ring(const char* k) {
  return make_ring(group_from_json(json::parse(R"({"type":"free","labels":["z"]})")), CoeffDomain::parse(k));
}

RMatrix entry(const RingPtr& r, const char* text) {
  RMatrix m = zero_matrix(r, 1, 1);
  m(0, 0) = parse_element(r, text);
  return m;
}

FreeChainComplex circle(const RingPtr& L) { return FreeChainComplex::make(L, {1, 1}, {entry(L, "z - 1")}); }

TriPtr torus_tri() {
  auto R = make_ring(group_from_json(json::parse(R"({"type":"free","labels":["a"]})")), CoeffDomain::integers());
  auto S = make_ring(group_from_json(json::parse(R"({"type":"free","labels":["s"]})")), CoeffDomain::integers());
  auto a = RingMorphism::make(S, R, {parse_letters(*R->group, "a")});
  return TriangularRing::hnn(a, a);
}

}  // namespace

TEST_CASE("split cokernel certificate on a small sequence") {
  RingPtr L = laurent_ring("Z");
  auto E = FreeChainComplex::make(L, {1}, {});
  auto D = FreeChainComplex::make(L, {2}, {});
  RMatrix F = zero_matrix(L, 1, 2);
  F(0, 0) = parse_element(L, "-z");
  F(0, 1) = RingElement::one(L);
  auto sc = split_cokernel(E, D, {F});
  CHECK(sc.kept[0] == std::vector<std::size_t>{0});
  CHECK(verify_certificate(E, D, sc.coker, sc.cert));
  auto bad = sc.cert;
  bad.rho[0](1, 0) = parse_element(L, "2");
  CHECK_FALSE(verify_certificate(E, D, sc.coker, bad));
  RMatrix G = zero_matrix(L, 1, 2);
  G(0, 0) = parse_element(L, "z - 1");
  G(0, 1) = parse_element(L, "z + 1");
  CHECK_THROWS_AS(split_cokernel(E, D, {G}), Error);
}

TEST_CASE("module assembly of the column modules") {
  auto A = torus_tri();
  auto L = localize(*A);
  auto P1 = assemble_module(*A, L, column_module(*A, 1));
  auto P2 = assemble_module(*A, L, column_module(*A, 2));
  REQUIRE(P1.free_rank);
  REQUIRE(P2.free_rank);
  CHECK(*P1.free_rank == 1);
  CHECK(*P2.free_rank == 1);
  CHECK(module_isomorphism(P1, P2).has_value());
  TriModule zero{0, 0, zero_matrix(A->diagonal()[0], 0, 0), std::nullopt, std::nullopt};
  auto P0 = assemble_module(*A, L, zero);
  CHECK(P0.free_rank.value_or(99) == 0);
  auto P12 = assemble_module(*A, L, direct_sum(*A, column_module(*A, 1), column_module(*A, 2)));
  CHECK(P12.free_rank.value_or(0) == 2);
  CHECK_FALSE(module_isomorphism(P1, P12).has_value());
}

TEST_CASE("empty edge complex assembles to the induced complex") {
  auto A = torus_tri();
  auto R = A->diagonal()[0];
  auto S = A->diagonal()[1];
  auto D = FreeChainComplex::make(R, {1, 1}, {entry(R, "a - 1")});
  AssemblyInput in{A, localize(*A), FreeChainComplex::make(S, {0}, {}), {D},
                   {{zero_matrix(R, 0, 1)}, {zero_matrix(R, 0, 1)}}};
  auto out = assemble_hnn(in);
  CHECK(out.complex.ranks == D.ranks);
  CHECK(out.complex.d[1] == induce_matrix(A->embedding(0), D.d[1]));
  CHECK_THROWS_AS(assemble_amalgam(in), Error);
}

TEST_CASE("mayer vietoris presentation of the circle") {
  RingPtr L = laurent_ring("Q");
  auto C = circle(L);
  auto P = mv_construct_laurent(C);
  CHECK(P.windows[1] == std::pair<long, long>{0, 0});
  CHECK(P.windows[0] == std::pair<long, long>{0, 1});
  CHECK(P.D.ranks == std::vector<std::size_t>{2, 1});
  CHECK(P.E.ranks == std::vector<std::size_t>{1, 0});
  CHECK(mv_verify(P, C));
  auto bad = P;
  bad.cert.sigma[0] = -bad.cert.sigma[0];
  CHECK_FALSE(mv_verify(bad, C));
  auto Q = MVPresentation::from_json(json::parse(P.to_json().dump()));
  CHECK(mv_verify(Q, C));
  CHECK(Q.to_json() == P.to_json());
}

TEST_CASE("zero differentials need no edge part") {
  RingPtr L = laurent_ring("Z");
  auto C = FreeChainComplex::make(L, {2, 1}, {zero_matrix(L, 1, 2)});
  auto P = mv_construct_laurent(C);
  CHECK(P.E.ranks == std::vector<std::size_t>{0, 0});
  CHECK(mv_verify(P, C));
}

TEST_CASE("mayer vietoris presentations of random laurent complexes") {
  std::mt19937_64 rng(2024);
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    for (int t = 0; t < 40; ++t) {
      auto C = rnd::bounded_complex(rng, L, 4, 3);
      auto P = mv_construct_laurent(C);
      CHECK(mv_verify(P, C));
      for (int r = 0; r <= C.top(); ++r) CHECK(P.D.rank(r) == C.rank(r) + P.E.rank(r));
    }
  }
}

TEST_CASE("geometric assembly doubles as a presentation") {
  std::ifstream in(std::string(COHN_DATA_DIR) + "/pairs/genus2.json");
  auto rep = cw_assemble(CWPairSpec::from_json(json::parse(in)));
  auto P = mv_from_assembly(rep.assembly);
  CHECK(mv_verify(P, rep.assembly.complex));
}
