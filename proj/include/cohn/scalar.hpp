#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "cohn/error.hpp"

namespace cohn {

enum class CoeffKind { Integers, Rationals, PrimeField };

/// The exact coefficient ring of a group ring: Z, Q or F_p.
struct CoeffDomain {
  CoeffKind kind = CoeffKind::Integers;
  std::uint32_t p = 0;  // only meaningful for PrimeField

  static CoeffDomain integers() { return {CoeffKind::Integers, 0}; }
  static CoeffDomain rationals() { return {CoeffKind::Rationals, 0}; }
  static CoeffDomain prime_field(std::uint32_t p);

  bool is_field() const { return kind != CoeffKind::Integers; }
  std::uint32_t modulus() const { return kind == CoeffKind::PrimeField ? p : 0; }
  std::string name() const;  // "Z", "Q", "Fp:5"
  static CoeffDomain parse(const std::string& s);

  bool operator==(const CoeffDomain&) const = default;
};

/// An exact scalar: a rational number, or a residue mod p when modulus() != 0.
///
/// Values with modulus 0 that are integral are promoted silently when combined
/// with a residue, so literals like Coeff(1) work in every coefficient domain.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Coeff(mpq_class v, std::uint32_t p = 0);

  static Coeff parse(const std::string& s, std::uint32_t p = 0);
  static Coeff in(const CoeffDomain& d, long v) { return Coeff(mpq_class(v), d.modulus()); }

  const mpq_class& value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Units of the integers are +-1; every nonzero element of a field is a unit.
  bool is_unit(const CoeffDomain& d) const;
  Coeff inverse() const;

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend Coeff operator/(const Coeff& a, const Coeff& b) { return a * b.inverse(); }

  bool operator==(const Coeff& o) const;
  // Total order used only for canonical tie-breaking.
  bool operator<(const Coeff& o) const { return cmp(v_, o.v_) < 0; }

  std::string to_string() const;

 private:
  void reduce();
  static std::uint32_t common_modulus(const Coeff& a, const Coeff& b);

  mpq_class v_{0};
  std::uint32_t p_ = 0;
};

/// Coerces a scalar into the given coefficient domain (reducing mod p).
Coeff coerce(const Coeff& c, const CoeffDomain& d);

}  // namespace cohn
