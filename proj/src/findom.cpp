#include "cohn/findom.hpp"

namespace cohn {

void require_field_laurent(const FreeChainComplex& C) {
  if (!C.ring->is_laurent()) throw Error(ErrorKind::UnsupportedRing, "expected a complex over k[z, z^-1]");
  if (!C.ring->coeffs.is_field())
    throw Error(ErrorKind::UnsupportedRing, "integer coefficients are not supported; use Q or Fp:<p>");
}

nlohmann::json DominationVerdict::to_json() const {
  nlohmann::json j = {{"dominated", dominated}, {"novikov_dims", novikov_dims}};
  if (witness) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& m : witness->s) s.push_back(plain_matrix_json(m));
    j["witness"] = s;
  }
  return j;
}

DominationVerdict fredholm_test(const FreeChainComplex& C) {
  require_field_laurent(C);
  auto F = fraction_complex(C);
  std::vector<std::size_t> rk(C.ranks.size() + 1, 0);
  for (int r = 1; r <= C.top(); ++r) rk[static_cast<std::size_t>(r)] = matrix_rank(F.diff(r), F.one);
  DominationVerdict v;
  v.dominated = true;
  for (int r = 0; r <= C.top(); ++r) {
    auto u = static_cast<std::size_t>(r);
    std::size_t dim = C.rank(r) - rk[u] - rk[u + 1];
    v.novikov_dims.push_back(dim);
    v.dominated = v.dominated && dim == 0;
  }
  if (v.dominated) {
    v.witness = find_contraction(F);
    if (!v.witness) throw Error(ErrorKind::NotAcyclic, "rank count and contraction search disagree");
  }
  return v;
}

namespace {

RingElement cofactor_det(const RMatrix& m, std::vector<std::size_t>& cols, std::size_t row, const RingPtr& ring) {
  if (row == m.rows()) return RingElement::one(ring);
  RingElement out(ring);
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (!m(row, c).is_zero()) {
      cols.erase(cols.begin() + static_cast<long>(k));
      RingElement minor = cofactor_det(m, cols, row + 1, ring);
      cols.insert(cols.begin() + static_cast<long>(k), c);
      RingElement term = m(row, c) * minor;
      out += sign > 0 ? term : -term;
    }
    sign = -sign;
  }
  return out;
}

}  // namespace

RingElement laurent_determinant(const RMatrix& d) {
  if (d.rows() != d.cols()) throw Error(ErrorKind::NonSquare, "determinant of a non-square matrix");
  RingPtr ring;
  for (std::size_t i = 0; i < d.rows() && !ring; ++i)
    for (std::size_t j = 0; j < d.cols() && !ring; ++j) ring = d(i, j).ring();
  if (!ring) return RingElement();
  if (!ring->is_laurent()) throw Error(ErrorKind::UnsupportedRing, "expected k[z, z^-1]");
  std::vector<std::size_t> cols(d.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return cofactor_det(d, cols, 0, ring);
}

bool domination_oracle_1dim(const RMatrix& d) {
  if (d.rows() != d.cols()) throw Error(ErrorKind::NonSquare, "two-term oracle needs a square differential");
  if (d.rows() == 0) return true;
  return !laurent_determinant(d).is_zero();
}

TorsionClass torsion_class(const RatFunc& value) {
  if (value.is_zero()) throw Error(ErrorKind::NotAUnit, "torsion value is zero");
  TorsionClass t;
  t.value = value;
  long vn = value.num().valuation(), vd = value.den().valuation();
  t.z_order = vn - vd;
  Poly num = value.num().shifted_down(vn), den = value.den().shifted_down(vd);
  Coeff lead = num.leading() / den.leading();
  std::uint32_t p = value.modulus();
  bool negative = p == 0 ? sgn(lead.value()) < 0 : 2 * lead.value() > p;
  t.sign = negative ? -1 : 1;
  t.normalized = RatFunc(negative ? -num : num, den);
  return t;
}

nlohmann::json TorsionClass::to_json() const {
  return {{"value", value.to_string()},
          {"sign", sign},
          {"z_order", z_order},
          {"normalized", normalized.to_string()},
          {"trivial", trivial()}};
}

TorsionClass torsion_with(const FreeChainComplex& C, const Contraction<RatFunc>& s) {
  require_field_laurent(C);
  auto F = fraction_complex(C);
  if (!verify_contraction(F, s)) throw Error(ErrorKind::NotAcyclic, "supplied contraction does not verify");
  std::vector<std::size_t> odd_at, even_at;
  std::size_t odd = 0, even = 0;
  for (int r = 0; r <= C.top(); ++r) {
    odd_at.push_back(odd);
    even_at.push_back(even);
    (r % 2 ? odd : even) += C.rank(r);
  }
  if (odd != even) throw Error(ErrorKind::NotAcyclic, "Euler characteristic is not zero");
  Matrix<RatFunc> M(odd, even, F.zero);
  for (int r = 1; r <= C.top(); r += 2) {
    auto u = static_cast<std::size_t>(r);
    M.set_block(odd_at[u], even_at[u - 1], F.diff(r));
    if (r + 1 <= C.top()) M.set_block(odd_at[u], even_at[u + 1], contraction_at(F, s, r));
  }
  RatFunc det = field_determinant(M, F.one, [](const RatFunc& x) { return x.inverse(); });
  return torsion_class(det);
}

TorsionClass torsion(const FreeChainComplex& C) {
  require_field_laurent(C);
  auto s = find_contraction(fraction_complex(C));
  if (!s) throw Error(ErrorKind::NotAcyclic, "C (x) k(z) has nonzero homology");
  return torsion_with(C, *s);
}

std::pair<Coeff, long> unit_factor(const RingElement& u) {
  auto t = laurent_terms(u);
  if (t.size() != 1) throw Error(ErrorKind::NotAUnit, "'" + u.to_string() + "' is not c z^n");
  const auto& [n, c] = *t.begin();
  if (!u.ring()->coeffs.is_field() && !(c.is_one() || (-c).is_one()))
    throw Error(ErrorKind::NotAUnit, "coefficient is not a unit");
  return {c, n};
}

}  // namespace cohn
