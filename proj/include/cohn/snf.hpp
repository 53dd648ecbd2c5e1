#pragma once

// Smith normal form with transforms over a Euclidean domain. Supported
// element types: Integer (Z), Coeff used as a field element (Q, F_p), Poly
// (k[z]) and RatFunc (k(z)).

#include <optional>
#include <utility>

#include "cohn/matrix.hpp"
#include "cohn/poly.hpp"

namespace cohn {

// --- Euclidean structure --------------------------------------------------

inline bool euclid_less(const Integer& a, const Integer& b) { return mpz_cmpabs(a.value().get_mpz_t(), b.value().get_mpz_t()) < 0; }
inline void euclid_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  mpz_class qq, rr;
  mpz_fdiv_qr(qq.get_mpz_t(), rr.get_mpz_t(), a.value().get_mpz_t(), b.value().get_mpz_t());
  q = Integer(qq);
  r = Integer(rr);
}
inline Integer unit_normalizer(const Integer& a) { return Integer(a.sign() < 0 ? -1 : 1); }
inline Integer unit_inverse(const Integer& u) { return u; }
inline Integer one_like(const Integer&) { return Integer(1); }

inline bool euclid_less(const Coeff&, const Coeff&) { return false; }
inline void euclid_divmod(const Coeff& a, const Coeff& b, Coeff& q, Coeff& r) {
  q = a / b;
  r = Coeff(mpq_class(0), a.modulus());
}
inline Coeff unit_normalizer(const Coeff& a) { return a.inverse(); }
inline Coeff unit_inverse(const Coeff& u) { return u.inverse(); }
inline Coeff one_like(const Coeff& a) { return Coeff(mpq_class(1), a.modulus()); }

inline bool euclid_less(const Poly& a, const Poly& b) { return a.degree() < b.degree(); }
inline void euclid_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) { Poly::divmod(a, b, q, r); }
inline Poly unit_normalizer(const Poly& a) { return Poly::constant(a.modulus(), a.leading().inverse()); }
inline Poly unit_inverse(const Poly& u) { return Poly::constant(u.modulus(), u.leading().inverse()); }
inline Poly one_like(const Poly& a) { return Poly::constant(a.modulus(), 1); }

inline bool euclid_less(const RatFunc&, const RatFunc&) { return false; }
inline void euclid_divmod(const RatFunc& a, const RatFunc& b, RatFunc& q, RatFunc& r) {
  q = a / b;
  r = RatFunc::constant(a.modulus(), 0);
}
inline RatFunc unit_normalizer(const RatFunc& a) { return a.inverse(); }
inline RatFunc unit_inverse(const RatFunc& u) { return u.inverse(); }
inline RatFunc one_like(const RatFunc& a) { return RatFunc::constant(a.modulus(), 1); }

// --- Smith form -------------------------------------------------------------

template <class T>
struct SmithForm {
  Matrix<T> D;  // P * A * Q, diagonal with d_i | d_{i+1}, normalized by units
  Matrix<T> P;
  Matrix<T> Q;
  std::size_t rank = 0;
};

template <class T>
SmithForm<T> smith(const Matrix<T>& A, const T& one) {
  const std::size_t m = A.rows(), n = A.cols();
  const T zero = A.zero();
  SmithForm<T> f{A, Matrix<T>::identity(m, zero, one), Matrix<T>::identity(n, zero, one), 0};
  Matrix<T>& D = f.D;
  Matrix<T>& P = f.P;
  Matrix<T>& Q = f.Q;

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(D(a, j), D(b, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(P(a, j), P(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(D(i, a), D(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(Q(i, a), Q(i, b));
  };
  // row_dst -= q * row_src
  auto row_axpy = [&](std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (!D(src, j).is_zero()) D(dst, j) -= q * D(src, j);
    for (std::size_t j = 0; j < m; ++j)
      if (!P(src, j).is_zero()) P(dst, j) -= q * P(src, j);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (!D(i, src).is_zero()) D(i, dst) -= D(i, src) * q;
    for (std::size_t i = 0; i < n; ++i)
      if (!Q(i, src).is_zero()) Q(i, dst) -= Q(i, src) * q;
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (!D(i, j).is_zero() && (!best || euclid_less(D(i, j), D(best->first, best->second)))) best = {{i, j}};
      if (!best) break;
      swap_rows(t, best->first);
      swap_cols(t, best->second);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t).is_zero()) continue;
        T q, r;
        euclid_divmod(D(i, t), D(t, t), q, r);
        row_axpy(i, t, q);
        if (!D(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j).is_zero()) continue;
        T q, r;
        euclid_divmod(D(t, j), D(t, t), q, r);
        col_axpy(j, t, q);
        if (!D(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the rest of the block
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (D(i, j).is_zero()) continue;
          T q, r;
          euclid_divmod(D(i, j), D(t, t), q, r);
          if (!r.is_zero()) {
            bad = i;
            break;
          }
        }
      if (!bad) break;
      row_axpy(t, *bad, -one);
    }
    if (D(t, t).is_zero()) break;
    T u = unit_normalizer(D(t, t));
    if (!(u == one)) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = u * D(t, j);
      for (std::size_t j = 0; j < m; ++j) P(t, j) = u * P(t, j);
    }
  }
  f.rank = t;
  return f;
}

/// Solves X * B = R for X, or returns nothing when no solution exists.
template <class T>
std::optional<Matrix<T>> solve_left(const Matrix<T>& B, const Matrix<T>& R, const T& one) {
  if (B.cols() != R.cols()) throw Error(ErrorKind::ShapeMismatch, "solve_left shapes");
  SmithForm<T> f = smith(B, one);
  Matrix<T> RQ = R * f.Q;
  Matrix<T> Y(R.rows(), B.rows(), B.zero());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    for (std::size_t i = 0; i < R.rows(); ++i) {
      if (RQ(i, j).is_zero()) continue;
      if (j >= f.rank) return std::nullopt;
      T q, r;
      euclid_divmod(RQ(i, j), f.D(j, j), q, r);
      if (!r.is_zero()) return std::nullopt;
      Y(i, j) = q;
    }
  }
  return Y * f.P;
}

template <class T>
std::size_t matrix_rank(const Matrix<T>& A, const T& one) {
  return smith(A, one).rank;
}

}  // namespace cohn
