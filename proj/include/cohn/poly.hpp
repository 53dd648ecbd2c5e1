#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "cohn/scalar.hpp"

namespace cohn {

/// Arbitrary precision integer with the interface Matrix<T> expects.
class Integer {
 public:
  Integer() = default;
  Integer(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(mpz_class v) : v_(std::move(v)) {}

  const mpz_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Integer operator-() const { return Integer(mpz_class(-v_)); }
  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  bool operator==(const Integer& o) const { return v_ == o.v_; }

  std::string to_string() const { return v_.get_str(); }

 private:
  mpz_class v_{0};
};

/// Polynomial in one variable over Q or F_p (modulus 0 means Q), dense, low degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::uint32_t p) : p_(p) {}
  Poly(std::uint32_t p, std::vector<Coeff> c);

  static Poly constant(std::uint32_t p, const Coeff& c) { return Poly(p, {c}); }
  static Poly monomial(std::uint32_t p, const Coeff& c, std::size_t deg);
  static Poly z(std::uint32_t p) { return monomial(p, 1, 1); }

  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(mpq_class(0), p_); }
  Coeff leading() const { return c_.back(); }
  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  long valuation() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Coeff& c) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Euclidean division a = q b + r with deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  Poly monic() const;
  Poly shifted_down(long k) const;  // divide by z^k (requires valuation >= k)

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::uint32_t p_ = 0;
  std::vector<Coeff> c_;
};

Poly gcd(Poly a, Poly b);

/// Element of k(z), kept as num/den with gcd 1 and monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(0, 1)) {}
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);
  static RatFunc constant(std::uint32_t p, const Coeff& c) { return RatFunc(Poly::constant(p, c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  std::uint32_t modulus() const { return num_.modulus(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

/// Laurent polynomial sum c_e z^e written as z^shift * poly with poly(0) != 0.
struct LaurentSplit {
  long shift = 0;
  Poly poly;
};
LaurentSplit split_laurent(std::uint32_t p, const std::map<long, Coeff>& terms);
std::map<long, Coeff> join_laurent(const Poly& poly, long shift);
RatFunc laurent_to_ratfunc(std::uint32_t p, const std::map<long, Coeff>& terms);

}  // namespace cohn
