#include "cohn/chains.hpp"

#include <algorithm>

namespace cohn {

RMatrix zero_matrix(const RingPtr& r, std::size_t rows, std::size_t cols) { return RMatrix(rows, cols, RingElement(r)); }

RMatrix identity_matrix(const RingPtr& r, std::size_t n) {
  return RMatrix::identity(n, RingElement(r), RingElement::one(r));
}

FreeChainComplex FreeChainComplex::make(RingPtr ring, std::vector<std::size_t> ranks, std::vector<RMatrix> ds) {
  FreeChainComplex c;
  static_cast<ChainComplexOf<RingElement>&>(c) =
      ChainComplexOf<RingElement>::build(std::move(ranks), std::move(ds), RingElement(ring), RingElement::one(ring));
  c.ring = ring;
  for (int r = 1; r <= c.top(); ++r) {
    auto& m = c.d[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& e = m(i, j);
        if (e.ring() && !e.ring()->same_as(*ring)) throw Error(ErrorKind::MixedRings, "differential entry over another ring");
        if (!e.ring()) m(i, j) = RingElement(ring);
      }
  }
  auto defects = complex_defects(c);
  if (!defects.empty()) throw Error(ErrorKind::RelationViolation, "not a chain complex: " + defects.front());
  return c;
}

ValidationReport validate_complex(const FreeChainComplex& c) {
  ValidationReport rep;
  auto defects = complex_defects(c);
  if (defects.empty())
    rep.verified.push_back("shapes consistent and d^2 = 0 in all degrees");
  else
    rep.failures = defects;
  return rep;
}

RMatrix induce_matrix(const RingMorphism& f, const RMatrix& m) {
  RMatrix out = zero_matrix(f.target, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = apply_morphism(f, m(i, j));
  return out;
}

FreeChainComplex induce(const RingMorphism& f, const FreeChainComplex& c) {
  if (!c.ring->same_as(*f.source)) throw Error(ErrorKind::MixedRings, "complex is not over the morphism source");
  std::vector<RMatrix> ds;
  for (int r = 1; r <= c.top(); ++r) ds.push_back(induce_matrix(f, c.diff(r)));
  return FreeChainComplex::make(f.target, c.ranks, ds);
}

ValidationReport validate_chain_map(const ChainMap& m) {
  ValidationReport rep;
  if (!m.source.ring->same_as(*m.target.ring)) {
    rep.failures.push_back("source and target over different rings");
    return rep;
  }
  auto defects = chain_map_defects<RingElement>(m.source, m.target, m.f);
  if (defects.empty())
    rep.verified.push_back("commutes with the differentials");
  else
    rep.failures = defects;
  return rep;
}

// --- conversions --------------------------------------------------------------

namespace {

void require_trivial_group(const RingDescriptor& r) {
  if (!r.group->is_trivial_group())
    throw Error(ErrorKind::UnsupportedRing, "expected a coefficient ring with trivial group");
}

Coeff constant_term(const RingElement& a) {
  if (a.is_zero()) return Coeff(mpq_class(0), a.ring() ? a.ring()->coeffs.modulus() : 0);
  return a.terms().begin()->second;
}

template <class T, class F>
ChainComplexOf<T> convert(const FreeChainComplex& c, T zero, T one, F&& f) {
  std::vector<Matrix<T>> ds;
  for (int r = 1; r <= c.top(); ++r) ds.push_back(c.diff(r).map(f));
  return ChainComplexOf<T>::build(c.ranks, ds, zero, one);
}

std::uint32_t field_modulus(const RingDescriptor& r) {
  return r.coeffs.modulus();
}

}  // namespace

ChainComplexOf<Integer> integer_complex(const FreeChainComplex& c) {
  require_trivial_group(*c.ring);
  if (c.ring->coeffs.kind != CoeffKind::Integers) throw Error(ErrorKind::UnsupportedRing, "expected Z coefficients");
  return convert(c, Integer(0), Integer(1),
                 [](const RingElement& a) { return Integer(mpz_class(constant_term(a).value().get_num())); });
}

Matrix<Coeff> to_coeff(const RMatrix& m) {
  return m.map([](const RingElement& a) { return constant_term(a); });
}

ChainComplexOf<Coeff> field_complex(const FreeChainComplex& c) {
  require_trivial_group(*c.ring);
  if (!c.ring->coeffs.is_field()) throw Error(ErrorKind::UnsupportedRing, "expected field coefficients");
  std::uint32_t p = field_modulus(*c.ring);
  return convert(c, Coeff(mpq_class(0), p), Coeff(mpq_class(1), p),
                 [](const RingElement& a) { return constant_term(a); });
}

RatFunc to_ratfunc(const RingElement& a) {
  if (!a.ring()) return RatFunc();
  if (!a.ring()->is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "k(z) needs a Laurent polynomial ring");
  return laurent_to_ratfunc(a.ring()->coeffs.modulus(), laurent_terms(a));
}

Matrix<RatFunc> to_ratfunc(const RMatrix& m) {
  return m.map([](const RingElement& a) { return to_ratfunc(a); });
}

ChainComplexOf<RatFunc> fraction_complex(const FreeChainComplex& c) {
  if (!c.ring->is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "k(z) needs a Laurent polynomial ring");
  std::uint32_t p = field_modulus(*c.ring);
  return convert(c, RatFunc::constant(p, 0), RatFunc::constant(p, 1),
                 [](const RingElement& a) { return to_ratfunc(a); });
}

// --- homology -------------------------------------------------------------------

nlohmann::json HomologySummary::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : groups) gs.push_back({{"degree", g.degree}, {"rank", g.rank}, {"torsion", g.torsion}});
  return {{"ring", ring}, {"groups", gs}};
}

namespace {

template <class T, class IsUnit, class Show>
HomologySummary euclid_homology(const ChainComplexOf<T>& c, std::string ring, IsUnit is_unit, Show show) {
  HomologySummary h{std::move(ring), {}};
  std::vector<SmithForm<T>> forms;
  for (int r = 0; r <= c.top() + 1; ++r) forms.push_back(smith(c.diff(r), c.one));
  for (int r = 0; r <= c.top(); ++r) {
    HomologyGroup g;
    g.degree = r;
    const auto& in = forms[static_cast<std::size_t>(r + 1)];
    g.rank = c.rank(r) - forms[static_cast<std::size_t>(r)].rank - in.rank;
    for (std::size_t i = 0; i < in.rank; ++i)
      if (!is_unit(in.D(i, i))) g.torsion.push_back(show(in.D(i, i)));
    h.groups.push_back(g);
  }
  return h;
}

// k[z,z^-1] matrix scaled by a power of z into k[z]
Matrix<Poly> polynomial_matrix(const RMatrix& m, std::uint32_t p) {
  long lo = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto t = laurent_terms(m(i, j));
      if (!t.empty()) lo = std::min(lo, t.begin()->first);
    }
  Matrix<Poly> out(m.rows(), m.cols(), Poly(p));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::map<long, Coeff> shifted;
      for (const auto& [e, c] : laurent_terms(m(i, j))) shifted[e - lo] = c;
      LaurentSplit s = split_laurent(p, shifted);
      if (!s.poly.is_zero()) out(i, j) = s.poly * Poly::monomial(p, 1, static_cast<std::size_t>(s.shift));
    }
  return out;
}

Poly strip_z(const Poly& f) { return f.shifted_down(f.valuation()).monic(); }

std::string laurent_factor_string(const RingElement& a) {
  // normalize up to units +-z^k: lowest exponent 0, positive leading coefficient
  auto t = laurent_terms(a);
  long lo = t.begin()->first;
  bool neg = t.rbegin()->second.sign() < 0;
  std::map<long, Coeff> s;
  for (const auto& [e, c] : t) s[e - lo] = neg ? -c : c;
  LaurentSplit ls = split_laurent(0, s);
  return ls.poly.to_string();
}

// Unit-pivot elimination over Z[z,z^-1]; returns the non-unit diagonal factors.
std::vector<std::string> unit_pivot_factors(RMatrix m) {
  std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t i = 0; i < m.rows() && !piv; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!col_used[j] && m(i, j).is_unit_monomial()) {
          piv = {{i, j}};
          break;
        }
    }
    if (!piv) break;
    auto [pi, pj] = *piv;
    RingElement inv = m(pi, pj).inverse_unit();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pi || m(i, pj).is_zero()) continue;
      RingElement f = m(i, pj) * inv;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(pi, j).is_zero()) m(i, j) -= f * m(pi, j);
    }
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (j != pj) m(pi, j) = RingElement(m(pi, pj).ring());
    row_used[pi] = true;
    col_used[pj] = true;
  }
  std::vector<std::string> factors;
  std::vector<int> per_col(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row_used[i]) continue;
    int count = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (col_used[j] || m(i, j).is_zero()) continue;
      ++count;
      ++per_col[j];
      factors.push_back(laurent_factor_string(m(i, j)));
    }
    if (count > 1) throw Error(ErrorKind::UnsupportedRing, "Z[z,z^-1] homology beyond unit-pivot diagonal reduction");
  }
  for (int n : per_col)
    if (n > 1) throw Error(ErrorKind::UnsupportedRing, "Z[z,z^-1] homology beyond unit-pivot diagonal reduction");
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

HomologySummary homology(const FreeChainComplex& c, bool localize) {
  const RingDescriptor& R = *c.ring;
  std::uint32_t p = R.coeffs.modulus();
  std::string k = R.coeffs.kind == CoeffKind::PrimeField ? "F" + std::to_string(p) : "Q";
  if (R.group->is_trivial_group()) {
    if (R.coeffs.is_field())
      return euclid_homology(field_complex(c), R.coeffs.name(), [](const Coeff&) { return true; },
                             [](const Coeff& x) { return x.to_string(); });
    return euclid_homology(integer_complex(c), "Z", [](const Integer& x) { return x.value() == 1 || x.value() == -1; },
                           [](const Integer& x) { return x.to_string(); });
  }
  if (!R.is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "homology over a noncommutative group ring");
  if (localize) {
    return euclid_homology(fraction_complex(c), k + "(z)", [](const RatFunc&) { return true; },
                           [](const RatFunc& x) { return x.to_string(); });
  }
  if (R.coeffs.is_field()) {
    std::vector<Matrix<Poly>> ds;
    for (int r = 1; r <= c.top(); ++r) ds.push_back(polynomial_matrix(c.diff(r), p));
    auto pc = ChainComplexOf<Poly>::build(c.ranks, ds, Poly(p), Poly::constant(p, 1));
    return euclid_homology(pc, k + "[z,z^-1]", [](const Poly& f) { return strip_z(f).degree() == 0; },
                           [](const Poly& f) { return strip_z(f).to_string(); });
  }
  // Z[z,z^-1]: ranks over Q(z), factors from unit-pivot reduction
  HomologySummary h = euclid_homology(fraction_complex(c), "Z[z,z^-1]", [](const RatFunc&) { return true; },
                                      [](const RatFunc& x) { return x.to_string(); });
  for (auto& g : h.groups) g.torsion = unit_pivot_factors(c.diff(g.degree + 1));
  return h;
}

ContractionResult contraction_search(const FreeChainComplex& c) {
  const RingDescriptor& R = *c.ring;
  ContractionResult out;
  if (R.group->is_trivial_group()) {
    if (R.coeffs.is_field()) {
      out.ring = R.coeffs.name();
      out.over_field = find_contraction(field_complex(c));
    } else {
      out.ring = "Z";
      out.over_integers = find_contraction(integer_complex(c));
    }
    return out;
  }
  if (!R.is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "contraction search over a noncommutative group ring");
  out.ring = (R.coeffs.kind == CoeffKind::PrimeField ? "F" + std::to_string(R.coeffs.p) : std::string("Q")) + "(z)";
  out.over_fractions = find_contraction(fraction_complex(c));
  return out;
}

// --- JSON -----------------------------------------------------------------------

nlohmann::json matrix_to_json(const RMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m(i, j), false));
    rows.push_back(row);
  }
  return rows;
}

namespace {

RingElement entry_from_json(const nlohmann::json& e, const RingPtr& r) {
  if (e.is_string()) return parse_element(r, e.get<std::string>());
  if (e.is_number_integer()) return RingElement::constant(r, Coeff(e.get<long>()));
  return element_from_json(e, r);
}

}  // namespace

RMatrix matrix_from_json(const nlohmann::json& j, const RingPtr& r, std::size_t rows, std::size_t cols) {
  RMatrix m = zero_matrix(r, rows, cols);
  if (j.size() != rows) throw Error(ErrorKind::ShapeMismatch, "matrix has the wrong number of rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = entry_from_json(j[i][k], r);
  }
  return m;
}

nlohmann::json complex_to_json(const FreeChainComplex& c) {
  nlohmann::json ds = nlohmann::json::object();
  for (int r = 1; r <= c.top(); ++r) ds[std::to_string(r)] = matrix_to_json(c.diff(r));
  return {{"ring", ring_to_json(*c.ring)}, {"ranks", c.ranks}, {"differentials", ds}};
}

FreeChainComplex complex_from_json(const nlohmann::json& j, const RingPtr& ring) {
  try {
    RingPtr r = ring ? ring : ring_from_json(j.at("ring"));
    auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
    std::vector<RMatrix> ds;
    const nlohmann::json empty = nlohmann::json::object();
    const auto& dj = j.contains("differentials") ? j.at("differentials") : empty;
    for (std::size_t d = 1; d < ranks.size(); ++d) {
      auto key = std::to_string(d);
      if (dj.contains(key))
        ds.push_back(matrix_from_json(dj.at(key), r, ranks[d], ranks[d - 1]));
      else
        ds.push_back(zero_matrix(r, ranks[d], ranks[d - 1]));
    }
    return FreeChainComplex::make(r, ranks, ds);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("complex: ") + ex.what());
  }
}

}  // namespace cohn
