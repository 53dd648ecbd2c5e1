#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cohn/chains.hpp"

namespace cohn {

/// Rejects anything but a complex over k[z, z^-1] with k = Q or F_p.
void require_field_laurent(const FreeChainComplex& C);

struct DominationVerdict {
  bool dominated = false;
  std::vector<std::size_t> novikov_dims;  // dim over k(z) of H_r(C (x) k(z))
  std::optional<Contraction<RatFunc>> witness;
  nlohmann::json to_json() const;
};

DominationVerdict fredholm_test(const FreeChainComplex& C);

/// Determinant over k[z, z^-1] by cofactor expansion.
RingElement laurent_determinant(const RMatrix& d);
/// Independent check for two-term complexes: det(d) != 0.
bool domination_oracle_1dim(const RMatrix& d);

/// value = sign * z^z_order * normalized, where normalized has no factor z in
/// numerator or denominator and a leading coefficient fixed up to sign.
struct TorsionClass {
  RatFunc value;
  int sign = 1;
  long z_order = 0;
  RatFunc normalized;
  bool trivial() const { return normalized.is_one(); }
  bool same_class(const TorsionClass& o) const { return normalized == o.normalized; }
  bool operator==(const TorsionClass& o) const {
    return value == o.value && sign == o.sign && z_order == o.z_order && normalized == o.normalized;
  }
  nlohmann::json to_json() const;
};

TorsionClass torsion_class(const RatFunc& value);

/// det(d + s : C_odd -> C_even) over k(z). Throws NotAcyclic.
TorsionClass torsion(const FreeChainComplex& C);
TorsionClass torsion_with(const FreeChainComplex& C, const Contraction<RatFunc>& s);

/// u = c * z^n for a single-term element of k[z, z^-1]; NotAUnit otherwise.
std::pair<Coeff, long> unit_factor(const RingElement& u);

template <class T, class Inv>
T field_determinant(Matrix<T> m, const T& one, Inv inv) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "determinant of a non-square matrix");
  T det = one;
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return m.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det = det * m(c, c);
    T pinv = inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      T f = m(r, c) * pinv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

}  // namespace cohn
