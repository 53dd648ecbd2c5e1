#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohn/groupring.hpp"
#include "cohn/matrix.hpp"
#include "cohn/poly.hpp"
#include "cohn/snf.hpp"

namespace cohn {

using RMatrix = Matrix<RingElement>;

RMatrix zero_matrix(const RingPtr& r, std::size_t rows, std::size_t cols);
RMatrix identity_matrix(const RingPtr& r, std::size_t n);

/// Finite chain complex of based free modules in degrees 0..top, over any
/// element type with the Matrix interface. d[r] has ranks[r] rows and
/// ranks[r-1] columns; d[0] is a placeholder.
template <class T>
struct ChainComplexOf {
  std::vector<std::size_t> ranks;
  std::vector<Matrix<T>> d;
  T zero{};
  T one{};

  int top() const { return static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int r) const { return r < 0 || r > top() ? 0 : ranks[static_cast<std::size_t>(r)]; }
  Matrix<T> diff(int r) const {
    if (r >= 1 && r <= top()) return d[static_cast<std::size_t>(r)];
    return Matrix<T>(rank(r), rank(r - 1), zero);
  }
  Matrix<T> id(int r) const { return Matrix<T>::identity(rank(r), zero, one); }

  static ChainComplexOf build(std::vector<std::size_t> ranks, std::vector<Matrix<T>> ds, T zero, T one) {
    ChainComplexOf c{std::move(ranks), {}, zero, one};
    c.d.resize(c.ranks.size(), Matrix<T>(c.rank(0), 0, zero));
    for (std::size_t r = 1; r < c.ranks.size(); ++r) {
      const Matrix<T>& m = ds.at(r - 1);
      if (m.rows() != c.ranks[r] || m.cols() != c.ranks[r - 1])
        throw Error(ErrorKind::ShapeMismatch, "differential d" + std::to_string(r) + " has the wrong shape");
      c.d[r] = m;
    }
    return c;
  }
};

/// Checks shapes and d_{r+1} d_r = 0.
template <class T>
std::vector<std::string> complex_defects(const ChainComplexOf<T>& c) {
  std::vector<std::string> out;
  for (int r = 1; r <= c.top(); ++r) {
    const auto& m = c.d[static_cast<std::size_t>(r)];
    if (m.rows() != c.rank(r) || m.cols() != c.rank(r - 1)) out.push_back("d" + std::to_string(r) + " shape");
  }
  if (!out.empty()) return out;
  for (int r = 2; r <= c.top(); ++r)
    if (!(c.diff(r) * c.diff(r - 1)).is_zero())
      out.push_back("d" + std::to_string(r) + " d" + std::to_string(r - 1) + " != 0");
  return out;
}

struct FreeChainComplex : ChainComplexOf<RingElement> {
  RingPtr ring;
  /// Validates d^2 = 0; throws RelationViolation or ShapeMismatch.
  static FreeChainComplex make(RingPtr ring, std::vector<std::size_t> ranks, std::vector<RMatrix> ds);
};

ValidationReport validate_complex(const FreeChainComplex& c);
FreeChainComplex induce(const RingMorphism& f, const FreeChainComplex& c);
RMatrix induce_matrix(const RingMorphism& f, const RMatrix& m);

/// Degreewise maps f_r : C_r -> D_r with d^C_r f_{r-1} = f_r d^D_r.
template <class T>
struct ChainMapOf {
  std::vector<Matrix<T>> f;  // indexed by degree
};

template <class T>
std::vector<std::string> chain_map_defects(const ChainComplexOf<T>& C, const ChainComplexOf<T>& D,
                                           const std::vector<Matrix<T>>& f) {
  std::vector<std::string> out;
  int top = std::max(C.top(), D.top());
  auto at = [&](int r) {
    if (r >= 0 && static_cast<std::size_t>(r) < f.size()) return f[static_cast<std::size_t>(r)];
    return Matrix<T>(C.rank(r), D.rank(r), C.zero);
  };
  for (int r = 0; r <= top; ++r) {
    auto fr = at(r);
    if (fr.rows() != C.rank(r) || fr.cols() != D.rank(r)) {
      out.push_back("map in degree " + std::to_string(r) + " has the wrong shape");
      return out;
    }
  }
  for (int r = 1; r <= top; ++r)
    if (!(C.diff(r) * at(r - 1) == at(r) * D.diff(r)))
      out.push_back("not a chain map in degree " + std::to_string(r));
  return out;
}

struct ChainMap {
  FreeChainComplex source;
  FreeChainComplex target;
  std::vector<RMatrix> f;
};
ValidationReport validate_chain_map(const ChainMap& m);

// --- certificates -----------------------------------------------------------

/// s[r] : C_r -> C_{r+1} with d_r s_{r-1} + s_r d_{r+1} = 1.
template <class T>
struct Contraction {
  std::vector<Matrix<T>> s;
};

template <class T>
Matrix<T> contraction_at(const ChainComplexOf<T>& c, const Contraction<T>& k, int r) {
  if (r >= 0 && static_cast<std::size_t>(r) < k.s.size()) return k.s[static_cast<std::size_t>(r)];
  return Matrix<T>(c.rank(r), c.rank(r + 1), c.zero);
}

template <class T>
bool verify_contraction(const ChainComplexOf<T>& c, const Contraction<T>& k) {
  for (int r = 0; r <= c.top(); ++r) {
    auto s_prev = contraction_at(c, k, r - 1), s_r = contraction_at(c, k, r);
    if (s_prev.rows() != c.rank(r - 1) || s_prev.cols() != c.rank(r) || s_r.rows() != c.rank(r) ||
        s_r.cols() != c.rank(r + 1))
      throw Error(ErrorKind::ShapeMismatch, "contraction has the wrong shape in degree " + std::to_string(r));
    if (!(c.diff(r) * s_prev + s_r * c.diff(r + 1) == c.id(r))) return false;
  }
  return true;
}

/// Degree by degree solve of s_r d_{r+1} = 1 - d_r s_{r-1} over a Euclidean domain.
template <class T>
std::optional<Contraction<T>> find_contraction(const ChainComplexOf<T>& c) {
  Contraction<T> k;
  for (int r = 0; r <= c.top(); ++r) {
    Matrix<T> rhs = c.id(r) - c.diff(r) * contraction_at(c, k, r - 1);
    auto s = solve_left(c.diff(r + 1), rhs, c.one);
    if (!s) return std::nullopt;
    k.s.push_back(*s);
  }
  if (!verify_contraction(c, k)) throw Error(ErrorKind::NotAcyclic, "contraction failed re-verification");
  return k;
}

/// Certificate that 0 -> A -i-> B -p-> C -> 0 is a split short exact sequence
/// of chain complexes: retraction rho : B -> A, section sigma : C -> B.
template <class T>
struct SplitCertificate {
  std::vector<Matrix<T>> i, p, rho, sigma;
};

template <class T>
std::vector<std::string> split_defects(const ChainComplexOf<T>& A, const ChainComplexOf<T>& B,
                                       const ChainComplexOf<T>& C, const SplitCertificate<T>& k) {
  std::vector<std::string> out;
  for (const auto& e : chain_map_defects(A, B, k.i)) out.push_back("injection: " + e);
  for (const auto& e : chain_map_defects(B, C, k.p)) out.push_back("projection: " + e);
  if (!out.empty()) return out;
  int top = B.top();
  if (k.rho.size() < B.ranks.size() || k.sigma.size() < B.ranks.size()) {
    out.push_back("splitting maps missing degrees");
    return out;
  }
  for (int r = 0; r <= top; ++r) {
    auto u = static_cast<std::size_t>(r);
    const auto &i = k.i[u], &p = k.p[u], &rho = k.rho[u], &sigma = k.sigma[u];
    std::string deg = " in degree " + std::to_string(r);
    if (rho.rows() != B.rank(r) || rho.cols() != A.rank(r) || sigma.rows() != C.rank(r) ||
        sigma.cols() != B.rank(r))
      throw Error(ErrorKind::ShapeMismatch, "splitting maps have the wrong shape" + deg);
    if (!(i * rho == A.id(r))) out.push_back("retraction after injection is not 1" + deg);
    if (!(sigma * p == C.id(r))) out.push_back("projection after section is not 1" + deg);
    if (!(i * p).is_zero()) out.push_back("projection after injection is not 0" + deg);
    if (!(rho * i + p * sigma == B.id(r))) out.push_back("splitting does not decompose the middle term" + deg);
  }
  return out;
}

// --- homology ---------------------------------------------------------------

struct HomologyGroup {
  int degree = 0;
  std::size_t rank = 0;              // free rank (dimension over a field)
  std::vector<std::string> torsion;  // non-unit invariant factors
};

struct HomologySummary {
  std::string ring;  // "Z", "Q", "Fp:5", "Q[z,z^-1]", "Z[z,z^-1]", "Q(z)"
  std::vector<HomologyGroup> groups;
  nlohmann::json to_json() const;
};

/// Homology over Z, Q, F_p (trivial group), k[z,z^-1] with k a field, or
/// k(z) when localize is set. Over Z[z,z^-1] only complexes that unit-pivot
/// reduce to diagonal form are handled.
HomologySummary homology(const FreeChainComplex& c, bool localize = false);

// --- conversions to commutative coefficient types -----------------------------

ChainComplexOf<Integer> integer_complex(const FreeChainComplex& c);
ChainComplexOf<Coeff> field_complex(const FreeChainComplex& c);
ChainComplexOf<RatFunc> fraction_complex(const FreeChainComplex& c);
RatFunc to_ratfunc(const RingElement& a);
Matrix<RatFunc> to_ratfunc(const RMatrix& m);
Matrix<Coeff> to_coeff(const RMatrix& m);

/// Chain contraction over a field, Z, or k(z) (k[z,z^-1] complexes are localized).
/// The result is re-verified before being returned.
struct ContractionResult {
  std::string ring;
  std::optional<Contraction<Integer>> over_integers;
  std::optional<Contraction<Coeff>> over_field;
  std::optional<Contraction<RatFunc>> over_fractions;
  bool found() const { return over_integers || over_field || over_fractions; }
};
ContractionResult contraction_search(const FreeChainComplex& c);

// --- JSON --------------------------------------------------------------------

nlohmann::json matrix_to_json(const RMatrix& m);
RMatrix matrix_from_json(const nlohmann::json& j, const RingPtr& r, std::size_t rows, std::size_t cols);
nlohmann::json complex_to_json(const FreeChainComplex& c);
FreeChainComplex complex_from_json(const nlohmann::json& j, const RingPtr& ring = nullptr);

template <class T>
nlohmann::json plain_matrix_json(const Matrix<T>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cohn
