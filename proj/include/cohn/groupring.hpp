#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cohn/groups.hpp"
#include "cohn/scalar.hpp"

namespace cohn {

/// k[G] for k one of Z, Q, F_p.
struct RingDescriptor {
  GroupPtr group;
  CoeffDomain coeffs;

  /// k[z, z^-1]: the group is an HNN extension of the trivial group or free abelian of rank 1.
  bool is_laurent() const;
  /// Any presentation of Z (also free of rank 1); the ring is then commutative Laurent.
  bool is_cyclic() const { return group->is_infinite_cyclic(); }
  bool is_commutative() const;

  bool same_as(const RingDescriptor& o) const { return coeffs == o.coeffs && group->same_as(*o.group); }
  std::string fingerprint() const { return group->fingerprint() + "/" + coeffs.name(); }
};

using RingPtr = std::shared_ptr<const RingDescriptor>;
RingPtr make_ring(GroupPtr g, CoeffDomain d);

struct LettersLess {
  bool operator()(const Letters& a, const Letters& b) const { return shortlex_less(a, b); }
};

/// Element of a group ring. A default-constructed element is a context-free
/// zero that adopts the ring of whatever it is combined with.
class RingElement {
 public:
  using Terms = std::map<Letters, Coeff, LettersLess>;

  RingElement() = default;
  explicit RingElement(RingPtr r) : ring_(std::move(r)) {}

  static RingElement zero(RingPtr r) { return RingElement(std::move(r)); }
  static RingElement constant(RingPtr r, const Coeff& c);
  static RingElement one(RingPtr r) { return constant(std::move(r), 1); }
  static RingElement monomial(RingPtr r, const Letters& g, const Coeff& c = 1);
  static RingElement parse_word(RingPtr r, const std::string& w, const Coeff& c = 1);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// c * g with c a unit of the coefficients.
  bool is_unit_monomial() const;
  RingElement inverse_unit() const;  // throws NotAUnit unless is_unit_monomial()

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement scaled(const Coeff& c) const;

  bool operator==(const RingElement& o) const;

  std::string to_string() const;

 private:
  void add_term(const Letters& g, const Coeff& c);
  void adopt(const RingElement& o);

  RingPtr ring_;
  Terms terms_;
};

RingElement involute(const RingElement& a);
Coeff augment(const RingElement& a);

/// Ring map induced by a group homomorphism on generators (coefficients included canonically).
struct RingMorphism {
  RingPtr source;
  RingPtr target;
  std::vector<Letters> generator_images;

  static RingMorphism make(RingPtr source, RingPtr target, std::vector<Letters> images);
  /// Checks that every defining relator of the source maps to a trivial word.
  ValidationReport validate() const;
  Letters apply_word(const Letters& w) const;
};

RingElement apply_morphism(const RingMorphism& f, const RingElement& a);

/// Laurent view: exponent of the generator -> coefficient (cyclic groups only).
std::map<long, Coeff> laurent_terms(const RingElement& a);
RingElement from_laurent(const RingPtr& r, const std::map<long, Coeff>& t);

nlohmann::json ring_to_json(const RingDescriptor& r);
RingPtr ring_from_json(const nlohmann::json& j);
nlohmann::json element_to_json(const RingElement& a, bool with_ring = true);
RingElement element_from_json(const nlohmann::json& j, const RingPtr& ring = nullptr);

}  // namespace cohn

namespace cohn {

/// Parses the text form printed by RingElement::to_string, e.g. "2*a b^-1 - z + 3".
RingElement parse_element(const RingPtr& r, const std::string& text);

}  // namespace cohn
