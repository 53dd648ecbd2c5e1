#include <doctest.h>

#include <random>

#include "cohn/findom.hpp"
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

FreeChainComplex two_term(const RingPtr& L, const RMatrix& d) { return FreeChainComplex::make(L, {d.cols(), d.rows()}, {d}); }

RMatrix random_square(std::mt19937_64& rng, const RingPtr& L, std::size_t n, long deg) {
  std::uniform_int_distribution<int> coin(0, 3);
  RMatrix m = zero_matrix(L, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng)) m(i, j) = rnd::laurent(rng, L, 0, deg, false);
  return m;
}

// random constant unitriangular change of basis
Matrix<RatFunc> random_rebase(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<long> c(-2, 2);
  Matrix<RatFunc> P = Matrix<RatFunc>::identity(n, RatFunc::constant(p, 0), RatFunc::constant(p, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) P(i, j) = RatFunc::constant(p, Coeff(mpq_class(c(rng)), p));
  return P;
}

Matrix<RatFunc> unitriangular_inverse(const Matrix<RatFunc>& P) {
  auto one = RatFunc::constant(P.zero().modulus(), 1);
  return *solve_left(P, Matrix<RatFunc>::identity(P.rows(), P.zero(), one), one);
}

}  // namespace

TEST_CASE("fredholm criterion on small examples") {
  RingPtr L = laurent_ring("Q");
  auto circle = fredholm_test(two_term(L, entry(L, "z - 1")));
  CHECK(circle.dominated);
  CHECK(circle.novikov_dims == std::vector<std::size_t>{0, 0});
  CHECK(circle.witness.has_value());
  auto point = fredholm_test(FreeChainComplex::make(L, {1}, {}));
  CHECK_FALSE(point.dominated);
  CHECK(point.novikov_dims == std::vector<std::size_t>{1});
  CHECK(fredholm_test(two_term(L, entry(L, "z^2 - 3*z + 1"))).dominated);
  RingPtr Z = laurent_ring("Z");
  CHECK_THROWS_AS(fredholm_test(two_term(Z, entry(Z, "z - 1"))), Error);
}

TEST_CASE("every nonzero laurent polynomial is invertible in k(z)") {
  std::mt19937_64 rng(5);
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    for (int t = 0; t < 50; ++t) {
      RingElement p = rnd::laurent(rng, L, -3, 3);
      RatFunc f = to_ratfunc(p);
      CHECK((f * f.inverse()).is_one());
    }
  }
}

TEST_CASE("determinant oracle") {
  RingPtr L = laurent_ring("Q");
  CHECK(domination_oracle_1dim(entry(L, "z - 1")));
  RMatrix diag = zero_matrix(L, 2, 2);
  diag(0, 0) = parse_element(L, "z");
  CHECK_FALSE(domination_oracle_1dim(diag));
  CHECK_THROWS_AS(domination_oracle_1dim(zero_matrix(L, 2, 3)), Error);
  std::mt19937_64 rng(17);
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr R = laurent_ring(k);
    for (int t = 0; t < 150; ++t) {
      std::size_t n = 1 + static_cast<std::size_t>(t % 4);
      RMatrix d = random_square(rng, R, n, 3);
      CHECK(fredholm_test(two_term(R, d)).dominated == domination_oracle_1dim(d));
    }
  }
}

TEST_CASE("torsion of the basic complexes") {
  RingPtr L = laurent_ring("Q");
  auto a = torsion(two_term(L, entry(L, "z - 1")));
  CHECK(a.value.to_string() == "z - 1");
  CHECK(a.z_order == 0);
  CHECK_FALSE(a.trivial());
  auto b = torsion(two_term(L, entry(L, "z")));
  CHECK(b.z_order == 1);
  CHECK(b.trivial());
  RMatrix sum = zero_matrix(L, 2, 2);
  sum(0, 0) = parse_element(L, "z - 1");
  sum(1, 1) = parse_element(L, "z");
  auto c = torsion(two_term(L, sum));
  CHECK(c.value == a.value * b.value);
  auto m = torsion(two_term(L, entry(L, "1 - z")));
  CHECK(m.sign == -1);
  CHECK(m.same_class(a));
  CHECK_THROWS_AS(torsion(FreeChainComplex::make(L, {1}, {})), Error);
}

TEST_CASE("torsion does not depend on the contraction") {
  std::mt19937_64 rng(99);
  for (const char* k : {"Q", "Fp:5"}) {
    RingPtr L = laurent_ring(k);
    std::uint32_t p = L->coeffs.modulus();
    for (int t = 0; t < 25; ++t) {
      auto C = rnd::laurent_complex(rng, L, 1 + t % 3, 3, true, 2);
      auto F = fraction_complex(C);
      // conjugate by constant changes of basis, contract there, and transport back
      std::vector<Matrix<RatFunc>> P, Pi;
      for (int r = 0; r <= C.top(); ++r) {
        P.push_back(random_rebase(rng, C.rank(r), p));
        Pi.push_back(unitriangular_inverse(P.back()));
      }
      auto G = F;
      for (int r = 1; r <= C.top(); ++r) G.d[r] = P[r] * F.d[r] * Pi[r - 1];
      auto sG = find_contraction(G);
      REQUIRE(sG);
      Contraction<RatFunc> s2;
      for (int r = 0; r < C.top(); ++r) s2.s.push_back(Pi[r] * sG->s[r] * P[r + 1]);
      REQUIRE(verify_contraction(F, s2));
      CHECK(torsion(C) == torsion_with(C, s2));
    }
  }
}

TEST_CASE("unit factorization") {
  RingPtr L = laurent_ring("Q");
  auto [c, n] = unit_factor(parse_element(L, "3*z^2"));
  CHECK(c == Coeff(3));
  CHECK(n == 2);
  CHECK(unit_factor(parse_element(L, "1")).second == 0);
  auto [c2, n2] = unit_factor(parse_element(L, "-z^-1"));
  CHECK(c2 == Coeff(-1));
  CHECK(n2 == -1);
  CHECK_THROWS_AS(unit_factor(parse_element(L, "z + 1")), Error);
}

TEST_CASE("rebasing by signed monomial matrices keeps the class") {
  std::mt19937_64 rng(123);
  RingPtr L = laurent_ring("Q");
  std::uniform_int_distribution<long> e(-2, 2);
  std::uniform_int_distribution<int> sg(0, 1);
  for (int t = 0; t < 20; ++t) {
    auto C = rnd::laurent_complex(rng, L, 1 + t % 2, 3, true, 2);
    auto D = C;
    std::size_t n = C.rank(0);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    RMatrix P = zero_matrix(L, n, n), Pi = zero_matrix(L, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      long k = e(rng);
      int s = sg(rng) ? 1 : -1;
      P(i, perm[i]) = from_laurent(L, {{k, Coeff(s)}});
      Pi(perm[i], i) = from_laurent(L, {{-k, Coeff(s)}});
    }
    D.d[1] = C.d[1] * Pi;
    auto a = torsion(C), b = torsion(D);
    CHECK(a.same_class(b));
    CHECK(torsion_class(b.value / a.value).trivial());
  }
}
