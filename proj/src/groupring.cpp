#include "cohn/groupring.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace cohn {

bool RingDescriptor::is_laurent() const {
  if (const auto* h = group->as<Group::Hnn>()) return h->base->is_trivial_group();
  if (const auto* a = group->as<Group::FreeAbelian>()) return a->labels.size() == 1;
  if (const auto* f = group->as<Group::Free>()) return f->labels.size() == 1;
  return false;
}

bool RingDescriptor::is_commutative() const {
  if (group->as<Group::FreeAbelian>() || group->is_trivial_group() || group->is_infinite_cyclic()) return true;
  if (const auto* f = group->as<Group::Finite>()) {
    for (std::size_t a = 0; a < f->table.size(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (f->table[a][b] != f->table[b][a]) return false;
    return true;
  }
  return false;
}

RingPtr make_ring(GroupPtr g, CoeffDomain d) { return std::make_shared<RingDescriptor>(RingDescriptor{std::move(g), d}); }

RingElement RingElement::constant(RingPtr r, const Coeff& c) { return monomial(std::move(r), {}, c); }

RingElement RingElement::monomial(RingPtr r, const Letters& g, const Coeff& c) {
  RingElement e(r);
  e.add_term(r->group->normalize(g), coerce(c, r->coeffs));
  return e;
}

RingElement RingElement::parse_word(RingPtr r, const std::string& w, const Coeff& c) {
  Letters l = parse_letters(*r->group, w);
  return monomial(std::move(r), l, c);
}

void RingElement::add_term(const Letters& g, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void RingElement::adopt(const RingElement& o) {
  if (!o.ring_) return;
  if (!ring_) {
    ring_ = o.ring_;
    return;
  }
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_))
    throw Error(ErrorKind::MixedRings, ring_->fingerprint() + " vs " + o.ring_->fingerprint());
}

bool RingElement::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
}

bool RingElement::is_unit_monomial() const {
  return ring_ && terms_.size() == 1 && terms_.begin()->second.is_unit(ring_->coeffs);
}

RingElement RingElement::inverse_unit() const {
  if (!is_unit_monomial()) throw Error(ErrorKind::NotAUnit, to_string() + " is not a unit monomial");
  const auto& [g, c] = *terms_.begin();
  return monomial(ring_, ring_->group->inverse(g), c.inverse());
}

RingElement RingElement::operator-() const {
  RingElement e = *this;
  for (auto& [g, c] : e.terms_) c = -c;
  return e;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  adopt(o);
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  adopt(o);
  for (const auto& [g, c] : o.terms_) add_term(g, -c);
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement out(a.ring_);
  out.adopt(b);
  if (a.is_zero() || b.is_zero()) return out;
  const Group& G = *out.ring_->group;
  for (const auto& [g, c] : a.terms_)
    for (const auto& [h, d] : b.terms_) out.add_term(G.multiply(g, h), c * d);
  return out;
}

RingElement RingElement::scaled(const Coeff& c) const {
  RingElement e(ring_);
  Coeff cc = ring_ ? coerce(c, ring_->coeffs) : c;
  for (const auto& [g, x] : terms_) e.add_term(g, cc * x);
  return e;
}

bool RingElement::operator==(const RingElement& o) const {
  if (ring_ && o.ring_ && ring_ != o.ring_ && !ring_->same_as(*o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [g, c] : terms_) {
    if (!(g == it->first) || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : terms_) {
    std::string word = ring_ ? format_letters(*ring_->group, g) : std::string();
    Coeff a = c;
    if (out.empty()) {
      if (a.sign() < 0 && ring_ && !ring_->coeffs.modulus()) {
        out += "-";
        a = -a;
      }
    } else if (a.sign() < 0 && ring_ && !ring_->coeffs.modulus()) {
      out += " - ";
      a = -a;
    } else {
      out += " + ";
    }
    if (word.empty())
      out += a.to_string();
    else if (a.is_one())
      out += word;
    else
      out += a.to_string() + "*" + word;
  }
  return out;
}

RingElement involute(const RingElement& a) {
  RingElement out(a.ring());
  if (!a.ring()) return out;
  for (const auto& [g, c] : a.terms()) out += RingElement::monomial(a.ring(), formal_inverse(g), c);
  return out;
}

Coeff augment(const RingElement& a) {
  Coeff s = a.ring() ? Coeff::in(a.ring()->coeffs, 0) : Coeff(0);
  for (const auto& [g, c] : a.terms()) s += c;
  return s;
}

RingMorphism RingMorphism::make(RingPtr source, RingPtr target, std::vector<Letters> images) {
  if (images.size() != source->group->generator_count())
    throw Error(ErrorKind::InvalidMorphism, "morphism needs one image per source generator");
  for (auto& w : images) w = target->group->normalize(w);
  if (source->coeffs.kind == CoeffKind::Rationals && target->coeffs.kind == CoeffKind::Integers)
    throw Error(ErrorKind::InvalidMorphism, "no coefficient map Q -> Z");
  RingMorphism f{std::move(source), std::move(target), std::move(images)};
  ValidationReport r = f.validate();
  if (!r.ok()) throw Error(ErrorKind::RelationViolation, r.failures.front());
  return f;
}

Letters RingMorphism::apply_word(const Letters& w) const {
  Letters out;
  for (const auto& l : w) {
    const Letters& im = generator_images.at(static_cast<std::size_t>(l.gen));
    Letters piece = l.exp > 0 ? im : formal_inverse(im);
    for (long i = 0; i < std::labs(l.exp); ++i) out.insert(out.end(), piece.begin(), piece.end());
  }
  return target->group->normalize(out);
}

ValidationReport RingMorphism::validate() const {
  ValidationReport r;
  const Group& S = *source->group;
  if (S.as<Group::Finite>()) {
    // generators are all elements; every product is a relation
    for (std::size_t i = 0; i < S.generator_count(); ++i)
      for (std::size_t j = 0; j < S.generator_count(); ++j) {
        Letters ab = S.multiply({{static_cast<int>(i), 1}}, {{static_cast<int>(j), 1}});
        Letters lhs = target->group->multiply(apply_word({{static_cast<int>(i), 1}}), apply_word({{static_cast<int>(j), 1}}));
        if (!(lhs == apply_word(ab))) {
          r.failures.push_back("multiplication table not preserved at " + S.label(static_cast<int>(i)) + "*" +
                               S.label(static_cast<int>(j)));
          return r;
        }
      }
    r.verified.push_back("finite multiplication table preserved");
    return r;
  }
  for (const auto& rel : S.defining_relators()) {
    if (!apply_word(rel).empty()) {
      r.failures.push_back("relator " + format_letters(S, rel) + " maps to a nontrivial word");
      return r;
    }
  }
  r.verified.push_back("all defining relators map to the identity");
  return r;
}

RingElement apply_morphism(const RingMorphism& f, const RingElement& a) {
  if (a.ring() && !a.ring()->same_as(*f.source)) throw Error(ErrorKind::MixedRings, "element not over morphism source");
  RingElement out(f.target);
  for (const auto& [g, c] : a.terms()) out += RingElement::monomial(f.target, f.apply_word(g), coerce(c, f.target->coeffs));
  return out;
}

std::map<long, Coeff> laurent_terms(const RingElement& a) {
  std::map<long, Coeff> out;
  if (!a.ring()) return out;
  if (!a.ring()->is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "not a Laurent polynomial ring");
  for (const auto& [g, c] : a.terms()) {
    long e = 0;
    for (const auto& l : g) e += l.exp;
    out[e] = c;
  }
  return out;
}

RingElement from_laurent(const RingPtr& r, const std::map<long, Coeff>& t) {
  if (!r->is_cyclic()) throw Error(ErrorKind::UnsupportedRing, "not a Laurent polynomial ring");
  int gen = static_cast<int>(r->group->generator_count()) - 1;
  RingElement out(r);
  for (const auto& [e, c] : t) {
    Letters w;
    if (e != 0) w.push_back({gen, e});
    out += RingElement::monomial(r, w, c);
  }
  return out;
}

nlohmann::json ring_to_json(const RingDescriptor& r) {
  return {{"group", r.group->descriptor_json()}, {"coefficients", r.coeffs.name()}};
}

RingPtr ring_from_json(const nlohmann::json& j) {
  try {
    return make_ring(group_from_json(j.at("group")), CoeffDomain::parse(j.value("coefficients", std::string("Z"))));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("ring descriptor: ") + ex.what());
  }
}

nlohmann::json element_to_json(const RingElement& a, bool with_ring) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (const auto& [g, c] : a.terms()) terms.emplace_back(format_letters(*a.ring()->group, g), c.to_string());
  std::sort(terms.begin(), terms.end());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : terms) arr.push_back({{"word", w}, {"coeff", c}});
  nlohmann::json j;
  if (with_ring && a.ring()) j["ring"] = ring_to_json(*a.ring());
  j["terms"] = arr;
  return j;
}

RingElement element_from_json(const nlohmann::json& j, const RingPtr& ring) {
  try {
    RingPtr r = ring;
    if (j.contains("ring")) {
      RingPtr given = ring_from_json(j.at("ring"));
      if (r && !r->same_as(*given)) throw Error(ErrorKind::MixedRings, "element ring differs from context");
      if (!r) r = given;
    }
    if (!r) throw Error(ErrorKind::Parse, "ring element without a ring");
    RingElement out(r);
    for (const auto& t : j.at("terms")) {
      Coeff c = t.at("coeff").is_string() ? Coeff::parse(t.at("coeff").get<std::string>(), r->coeffs.modulus())
                                          : Coeff(t.at("coeff").get<long>());
      out += RingElement::monomial(r, parse_letters(*r->group, t.at("word").get<std::string>()), coerce(c, r->coeffs));
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("ring element: ") + ex.what());
  }
}

}  // namespace cohn

namespace cohn {

RingElement parse_element(const RingPtr& r, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  RingElement out(r);
  Coeff sign = 1;
  std::optional<Coeff> coeff;
  std::string word;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    Coeff c = coeff ? *coeff : Coeff(1);
    out += RingElement::monomial(r, parse_letters(*r->group, word), coerce(sign * c, r->coeffs));
    sign = 1;
    coeff.reset();
    word.clear();
    open = false;
  };
  auto numeric = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789/") == std::string::npos;
  };
  bool expect_term = true;
  while (in >> tok) {
    if (tok == "+" || tok == "-") {
      if (open) flush();
      if (tok == "-") sign = -sign;
      expect_term = true;
      continue;
    }
    if (tok.size() > 1 && tok[0] == '-' && expect_term && !open) {
      sign = -sign;
      tok = tok.substr(1);
    }
    auto star = tok.find('*');
    if (star != std::string::npos) {
      if (open) throw Error(ErrorKind::Parse, "coefficient inside a word in '" + text + "'");
      coeff = Coeff::parse(tok.substr(0, star), r->coeffs.modulus());
      tok = tok.substr(star + 1);
      open = true;
    } else if (numeric(tok) && !open) {
      coeff = Coeff::parse(tok, r->coeffs.modulus());
      open = true;
      expect_term = false;
      continue;
    }
    if (!tok.empty()) {
      if (!word.empty()) word += ' ';
      word += tok;
    }
    open = true;
    expect_term = false;
  }
  flush();
  return out;
}

}  // namespace cohn
