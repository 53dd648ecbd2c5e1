#include "cohn/scalar.hpp"

#include <string>

namespace cohn {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

CoeffDomain CoeffDomain::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::Parse, "modulus " + std::to_string(p) + " is not prime");
  return {CoeffKind::PrimeField, p};
}

std::string CoeffDomain::name() const {
  switch (kind) {
    case CoeffKind::Integers: return "Z";
    case CoeffKind::Rationals: return "Q";
    case CoeffKind::PrimeField: return "Fp:" + std::to_string(p);
  }
  return "?";
}

CoeffDomain CoeffDomain::parse(const std::string& s) {
  if (s == "Z") return integers();
  if (s == "Q") return rationals();
  if (s.rfind("Fp:", 0) == 0) {
    try {
      return prime_field(static_cast<std::uint32_t>(std::stoul(s.substr(3))));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorKind::Parse, "unknown coefficient domain '" + s + "'");
}

Coeff::Coeff(mpq_class v, std::uint32_t p) : v_(std::move(v)), p_(p) {
  v_.canonicalize();
  reduce();
}

Coeff Coeff::parse(const std::string& s, std::uint32_t p) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw Error(ErrorKind::Parse, "bad coefficient '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  return Coeff(q, p);
}

void Coeff::reduce() {
  if (p_ == 0) return;
  mpz_class pz(p_);
  mpz_class num = v_.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = v_.get_den() % pz;
  if (den == 0) throw Error(ErrorKind::Parse, "denominator divisible by p");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  num = (num * inv) % pz;
  v_ = mpq_class(num);
}

std::uint32_t Coeff::common_modulus(const Coeff& a, const Coeff& b) {
  if (a.p_ == b.p_) return a.p_;
  if (a.p_ == 0 && a.is_integer()) return b.p_;
  if (b.p_ == 0 && b.is_integer()) return a.p_;
  throw Error(ErrorKind::MixedRings, "coefficients from different characteristics");
}

bool Coeff::is_unit(const CoeffDomain& d) const {
  if (is_zero()) return false;
  if (d.is_field()) return true;
  return v_ == 1 || v_ == -1;
}

Coeff Coeff::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotAUnit, "division by zero");
  mpq_class inv = 1 / v_;
  return Coeff(inv, p_);
}

Coeff Coeff::operator-() const { return Coeff(mpq_class(-v_), p_); }

Coeff& Coeff::operator+=(const Coeff& o) {
  p_ = common_modulus(*this, o);
  v_ += o.v_;
  reduce();
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  p_ = common_modulus(*this, o);
  v_ -= o.v_;
  reduce();
  return *this;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  p_ = common_modulus(*this, o);
  v_ *= o.v_;
  reduce();
  return *this;
}

bool Coeff::operator==(const Coeff& o) const {
  if (p_ == o.p_) return v_ == o.v_;
  std::uint32_t p = common_modulus(*this, o);
  return Coeff(v_, p).v_ == Coeff(o.v_, p).v_;
}

std::string Coeff::to_string() const { return v_.get_str(10); }

Coeff coerce(const Coeff& c, const CoeffDomain& d) {
  if (d.kind == CoeffKind::Integers && !c.is_integer())
    throw Error(ErrorKind::Parse, "non-integral coefficient " + c.to_string() + " over Z");
  return Coeff(c.value(), d.modulus());
}

}  // namespace cohn
