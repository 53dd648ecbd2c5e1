#include "cohn/poly.hpp"

#include <algorithm>

namespace cohn {

namespace {

std::uint32_t join_mod(std::uint32_t a, std::uint32_t b) {
  if (a == b || b == 0) return a;
  if (a == 0) return b;
  throw Error(ErrorKind::MixedRings, "polynomials over different characteristics");
}

}  // namespace

Poly::Poly(std::uint32_t p, std::vector<Coeff> c) : p_(p), c_(std::move(c)) {
  for (auto& x : c_) x = Coeff(x.value(), p_);
  trim();
}

Poly Poly::monomial(std::uint32_t p, const Coeff& c, std::size_t deg) {
  std::vector<Coeff> v(deg + 1, Coeff(mpq_class(0), p));
  v[deg] = c;
  return Poly(p, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<long>(i);
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  p_ = join_mod(p_, o.p_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Coeff(mpq_class(0), p_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  p_ = join_mod(p_, o.p_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Coeff(mpq_class(0), p_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::uint32_t p = join_mod(a.p_, b.p_);
  if (a.is_zero() || b.is_zero()) return Poly(p);
  std::vector<Coeff> c(a.c_.size() + b.c_.size() - 1, Coeff(mpq_class(0), p));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(p, std::move(c));
}

Poly Poly::scaled(const Coeff& c) const {
  Poly r = *this;
  for (auto& x : r.c_) x *= c;
  r.trim();
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw Error(ErrorKind::NotAUnit, "polynomial division by zero");
  std::uint32_t p = join_mod(a.p_, b.p_);
  r = a;
  r.p_ = p;
  q = Poly(p);
  Coeff lead_inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    auto k = static_cast<std::size_t>(r.degree() - b.degree());
    Coeff f = r.leading() * lead_inv;
    Poly m = monomial(p, f, k);
    q += m;
    r -= m * b;
  }
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Poly Poly::shifted_down(long k) const {
  if (k == 0 || is_zero()) return *this;
  if (k > valuation()) throw Error(ErrorKind::ShapeMismatch, "shift below valuation");
  return Poly(p_, std::vector<Coeff>(c_.begin() + k, c_.end()));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    Coeff c = c_[i];
    if (c.is_zero()) continue;
    bool neg = p_ == 0 && c.sign() < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mon.empty())
      out += c.to_string();
    else if (c.is_one())
      out += mon;
    else
      out += c.to_string() + "*" + mon;
  }
  return out;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.modulus(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::NotAUnit, "zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(den_.modulus(), 1);
    return;
  }
  Poly g = gcd(num_, den_);
  Poly q, r;
  if (g.degree() > 0) {
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Coeff lc = den_.leading();
  if (!lc.is_one()) {
    Coeff inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.modulus() ? a.modulus() : b.modulus()));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotAUnit, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

LaurentSplit split_laurent(std::uint32_t p, const std::map<long, Coeff>& terms) {
  LaurentSplit out{0, Poly(p)};
  if (terms.empty()) return out;
  long lo = terms.begin()->first;
  long hi = terms.rbegin()->first;
  std::vector<Coeff> c(static_cast<std::size_t>(hi - lo + 1), Coeff(mpq_class(0), p));
  for (const auto& [e, x] : terms) c[static_cast<std::size_t>(e - lo)] = x;
  out.shift = lo;
  out.poly = Poly(p, std::move(c));
  return out;
}

std::map<long, Coeff> join_laurent(const Poly& poly, long shift) {
  std::map<long, Coeff> out;
  for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
    if (!poly.coeffs()[i].is_zero()) out[static_cast<long>(i) + shift] = poly.coeffs()[i];
  return out;
}

RatFunc laurent_to_ratfunc(std::uint32_t p, const std::map<long, Coeff>& terms) {
  LaurentSplit s = split_laurent(p, terms);
  if (s.shift >= 0) return RatFunc(s.poly * Poly::monomial(p, 1, static_cast<std::size_t>(s.shift)));
  return RatFunc(s.poly, Poly::monomial(p, 1, static_cast<std::size_t>(-s.shift)));
}

}  // namespace cohn
