#include <random>

#include "cohn/snf.hpp"
#include "doctest.h"

using namespace cohn;

namespace {

Matrix<Integer> imat(std::vector<std::vector<long>> rows) {
  Matrix<Integer> m(rows.size(), rows.empty() ? 0 : rows[0].size(), Integer(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Integer(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("integer smith form") {
  auto A = imat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto f = smith(A, Integer(1));
  CHECK(f.P * A * f.Q == f.D);
  CHECK(f.rank == 3);
  CHECK(f.D(0, 0) == Integer(2));
  CHECK(f.D(1, 1) == Integer(6));
  CHECK(f.D(2, 2) == Integer(12));
}

TEST_CASE("random integer smith and solve") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-4, 4);
  std::uniform_int_distribution<int> sz(1, 4);
  for (int it = 0; it < 300; ++it) {
    std::size_t m = static_cast<std::size_t>(sz(rng)), n = static_cast<std::size_t>(sz(rng));
    Matrix<Integer> A(m, n, Integer(0)), X(2, m, Integer(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = Integer(e(rng));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < m; ++j) X(i, j) = Integer(e(rng));
    auto f = smith(A, Integer(1));
    CHECK(f.P * A * f.Q == f.D);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) CHECK(f.D(i, j).is_zero());
    for (std::size_t i = 0; i + 1 < f.rank; ++i) {
      Integer q, r;
      euclid_divmod(f.D(i + 1, i + 1), f.D(i, i), q, r);
      CHECK(r.is_zero());
    }
    auto R = X * A;
    auto sol = solve_left(A, R, Integer(1));
    REQUIRE(sol);
    CHECK(*sol * A == R);
  }
}

TEST_CASE("polynomial smith form") {
  Poly z = Poly::z(0), one = Poly::constant(0, 1);
  Matrix<Poly> A(2, 2, Poly(0));
  A(0, 0) = z - one;
  A(1, 1) = z * z - one;
  auto f = smith(A, one);
  CHECK(f.P * A * f.Q == f.D);
  CHECK(f.D(0, 0) == z - one);
  CHECK(f.D(1, 1) == z * z - one);
  RatFunc r(z, z * z - one);
  CHECK((r * RatFunc(z - one)).to_string() == "(z)/(z + 1)");
}
