#include "cohn/trimat.hpp"

#include <set>

namespace cohn {

namespace {

// Copy of a flat group with labels made disjoint from `taken`.
GroupPtr disjoint_labels(const GroupPtr& g, const std::vector<std::string>& taken) {
  std::set<std::string> used(taken.begin(), taken.end());
  bool clash = false;
  for (const auto& l : g->labels()) clash = clash || used.count(l);
  if (!clash) return g;
  nlohmann::json j = g->descriptor_json();
  const char* key = j["type"] == "finite" ? "elements" : "labels";
  if (!j.contains(key)) throw Error(ErrorKind::InvalidGroup, "cannot relabel a composite factor group");
  for (auto& l : j[key]) {
    std::string s = l.get<std::string>();
    while (used.count(s)) s += "'";
    used.insert(s);
    l = s;
  }
  return group_from_json(j);
}

std::string fresh_label(const std::vector<std::string>& taken, std::string want) {
  std::set<std::string> used(taken.begin(), taken.end());
  while (used.count(want)) want += "'";
  return want;
}

Letters generator(int i) { return {{i, 1}}; }

RMatrix block_diag(const RingPtr& r, const RMatrix& b, std::size_t copies) {
  RMatrix out = zero_matrix(r, b.rows() * copies, b.cols() * copies);
  for (std::size_t k = 0; k < copies; ++k) out.set_block(k * b.rows(), k * b.cols(), b);
  return out;
}

}  // namespace

TriPtr TriangularRing::hnn(const RingMorphism& alpha, const RingMorphism& beta, std::optional<FormData> form) {
  if (!alpha.source->same_as(*beta.source) || !alpha.target->same_as(*beta.target))
    throw Error(ErrorKind::InvalidMorphism, "alpha and beta must both map S to R");
  if (!(alpha.source->coeffs == alpha.target->coeffs))
    throw Error(ErrorKind::InvalidMorphism, "R and S must share coefficients");
  auto A = std::shared_ptr<TriangularRing>(new TriangularRing());
  A->kind_ = TriKind::Hnn;
  A->diag_ = {alpha.target, alpha.source};
  A->maps_ = {alpha, beta};
  const Group& R = *alpha.target->group;
  EdgeData ea{alpha.source->group, alpha.generator_images, std::nullopt};
  EdgeData eb{beta.source->group, beta.generator_images, std::nullopt};
  GroupPtr G = Group::hnn(alpha.target->group, ea, eb, fresh_label(R.labels(), "z"));
  A->target_ = make_ring(G, alpha.target->coeffs);
  std::vector<Letters> incl;
  for (std::size_t i = 0; i < R.generator_count(); ++i) incl.push_back(generator(static_cast<int>(i)));
  A->embed_.push_back(RingMorphism::make(alpha.target, A->target_, incl));
  A->embed_.push_back(RingMorphism::make(alpha.source, A->target_, alpha.generator_images));
  A->report_.merge(alpha.validate());
  A->report_.merge(beta.validate());
  A->report_.merge(G->report());
  A->report_.verified.push_back("P1 + P2 = A: e1 + e2 = 1 with orthogonal idempotents");
  if (form) {
    const auto& f = *form;
    RMatrix I = identity_matrix(alpha.target, 2);
    if (f.beta.rows() != 2 || f.beta.cols() != 2 || f.beta_inv.rows() != 2 || f.beta_inv.cols() != 2)
      throw Error(ErrorKind::ShapeMismatch, "form on B = R + R must be 2 x 2");
    if (!(f.beta * f.beta_inv == I) || !(f.beta_inv * f.beta == I))
      throw Error(ErrorKind::NotAUnit, "form matrix and its inverse do not multiply to 1");
    if (!(adjoint(f.beta) == f.beta)) throw Error(ErrorKind::InvalidMorphism, "form is not symmetric");
    A->report_.verified.push_back("form is nonsingular and symmetric");
    A->form_ = form;
  }
  return A;
}

TriPtr TriangularRing::amalgam(const RingMorphism& i1, const RingMorphism& i2) {
  if (!i1.source->same_as(*i2.source)) throw Error(ErrorKind::InvalidMorphism, "i1 and i2 must share the source S");
  if (!(i1.target->coeffs == i2.target->coeffs) || !(i1.source->coeffs == i1.target->coeffs))
    throw Error(ErrorKind::InvalidMorphism, "R1, R2 and S must share coefficients");
  auto A = std::shared_ptr<TriangularRing>(new TriangularRing());
  A->kind_ = TriKind::Amalgam;
  A->diag_ = {i1.target, i2.target, i1.source};
  A->maps_ = {i1, i2};
  const Group& R1 = *i1.target->group;
  GroupPtr right = disjoint_labels(i2.target->group, R1.labels());
  EdgeData e1{i1.source->group, i1.generator_images, std::nullopt};
  EdgeData e2{i1.source->group, i2.generator_images, std::nullopt};
  GroupPtr G = Group::amalgam(i1.target->group, right, e1, e2);
  A->target_ = make_ring(G, i1.target->coeffs);
  int nl = static_cast<int>(R1.generator_count());
  std::vector<Letters> inc1, inc2, incs;
  for (int i = 0; i < nl; ++i) inc1.push_back(generator(i));
  for (std::size_t j = 0; j < right->generator_count(); ++j) inc2.push_back(generator(nl + static_cast<int>(j)));
  A->embed_.push_back(RingMorphism::make(i1.target, A->target_, inc1));
  A->embed_.push_back(RingMorphism::make(i2.target, A->target_, inc2));
  A->embed_.push_back(RingMorphism::make(i1.source, A->target_, i1.generator_images));
  A->report_.merge(i1.validate());
  A->report_.merge(i2.validate());
  A->report_.merge(G->report());
  A->report_.verified.push_back("P1 + P2 + P3 = A: e1 + e2 + e3 = 1 with orthogonal idempotents");
  return A;
}

void TriangularRing::check_element(const TriElement& a) const {
  if (a.diag.size() != size() || a.corner.size() != 2) throw Error(ErrorKind::ShapeMismatch, "malformed triangular element");
}

TriElement TriangularRing::zero() const {
  TriElement z;
  for (const auto& r : diag_) z.diag.emplace_back(r);
  if (kind_ == TriKind::Hnn)
    z.corner = {RingElement(diag_[0]), RingElement(diag_[0])};
  else
    z.corner = {RingElement(diag_[0]), RingElement(diag_[1])};
  return z;
}

TriElement TriangularRing::one() const {
  TriElement e = zero();
  for (std::size_t i = 0; i < size(); ++i) e.diag[i] = RingElement::one(diag_[i]);
  return e;
}

TriElement TriangularRing::idempotent(std::size_t i) const {
  if (i < 1 || i > size()) throw Error(ErrorKind::ShapeMismatch, "column index out of range");
  TriElement e = zero();
  e.diag[i - 1] = RingElement::one(diag_[i - 1]);
  return e;
}

TriElement TriangularRing::add(const TriElement& a, const TriElement& b) const {
  check_element(a);
  check_element(b);
  TriElement c = a;
  for (std::size_t i = 0; i < c.diag.size(); ++i) c.diag[i] += b.diag[i];
  for (std::size_t i = 0; i < 2; ++i) c.corner[i] += b.corner[i];
  return c;
}

TriElement TriangularRing::mul(const TriElement& a, const TriElement& b) const {
  check_element(a);
  check_element(b);
  TriElement c = zero();
  for (std::size_t i = 0; i < size(); ++i) c.diag[i] = a.diag[i] * b.diag[i];
  if (kind_ == TriKind::Hnn) {
    // (x, y) s = (x alpha(s), y beta(s))
    for (std::size_t k = 0; k < 2; ++k)
      c.corner[k] = a.diag[0] * b.corner[k] + a.corner[k] * apply_morphism(maps_[k], b.diag[1]);
  } else {
    for (std::size_t k = 0; k < 2; ++k)
      c.corner[k] = a.diag[k] * b.corner[k] + a.corner[k] * apply_morphism(maps_[k], b.diag[2]);
  }
  return c;
}

TriElement TriangularRing::project(std::size_t i, std::size_t j, const TriElement& a) const {
  return mul(mul(idempotent(i), a), idempotent(j));
}

RMatrix TriangularRing::right_action(const RingElement& s) const {
  if (kind_ != TriKind::Hnn) throw Error(ErrorKind::ShapeMismatch, "right action matrix is defined for the 2 x 2 ring");
  RMatrix m = zero_matrix(diag_[0], 2, 2);
  m(0, 0) = apply_morphism(maps_[0], s);
  m(1, 1) = apply_morphism(maps_[1], s);
  return m;
}

nlohmann::json TriangularRing::to_json() const {
  auto images = [](const RingMorphism& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& w : f.generator_images) a.push_back(format_letters(*f.target->group, w));
    return a;
  };
  nlohmann::json j;
  if (kind_ == TriKind::Hnn) {
    j = {{"kind", "hnn"}, {"R", ring_to_json(*diag_[0])}, {"S", ring_to_json(*diag_[1])},
         {"alpha", images(maps_[0])}, {"beta", images(maps_[1])}};
    if (form_) j["form"] = {{"beta", matrix_to_json(form_->beta)}, {"beta_inverse", matrix_to_json(form_->beta_inv)}};
  } else {
    j = {{"kind", "amalgam"}, {"R1", ring_to_json(*diag_[0])}, {"R2", ring_to_json(*diag_[1])},
         {"S", ring_to_json(*diag_[2])}, {"i1", images(maps_[0])}, {"i2", images(maps_[1])}};
  }
  j["target"] = ring_to_json(*target_);
  return j;
}

TriPtr triangular_from_json(const nlohmann::json& j) {
  try {
    auto hom = [](const RingPtr& s, const RingPtr& t, const nlohmann::json& imgs) {
      std::vector<Letters> w;
      for (const auto& i : imgs) w.push_back(parse_letters(*t->group, i.get<std::string>()));
      return RingMorphism::make(s, t, w);
    };
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "hnn") {
      RingPtr R = ring_from_json(j.at("R")), S = ring_from_json(j.at("S"));
      std::optional<FormData> form;
      if (j.contains("form"))
        form = FormData{matrix_from_json(j["form"].at("beta"), R, 2, 2),
                        matrix_from_json(j["form"].at("beta_inverse"), R, 2, 2)};
      return TriangularRing::hnn(hom(S, R, j.at("alpha")), hom(S, R, j.at("beta")), form);
    }
    if (kind == "amalgam") {
      RingPtr R1 = ring_from_json(j.at("R1")), R2 = ring_from_json(j.at("R2")), S = ring_from_json(j.at("S"));
      return TriangularRing::amalgam(hom(S, R1, j.at("i1")), hom(S, R2, j.at("i2")));
    }
    throw Error(ErrorKind::Parse, "unknown triangular ring kind '" + kind + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("triangular ring: ") + ex.what());
  }
}

ModuleDescription hom_columns(const TriangularRing& A, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > A.size() || j > A.size()) throw Error(ErrorKind::ShapeMismatch, "column index out of range");
  ModuleDescription d{"0", true, i, j};
  if (A.kind() == TriKind::Hnn) {
    if (i == j) d = {i == 1 ? "R" : "S", false, i, j};
    if (i == 1 && j == 2) d = {"R_alpha + R_beta", false, i, j};
  } else {
    if (i == j) d = {i == 1 ? "R1" : i == 2 ? "R2" : "S", false, i, j};
    if (i == 1 && j == 3) d = {"R1", false, i, j};
    if (i == 2 && j == 3) d = {"R2", false, i, j};
  }
  return d;
}

RMatrix lambda(const TriangularRing& A, const TriElement& a) {
  const RingPtr& C = A.target();
  RMatrix m = zero_matrix(C, A.size(), A.size());
  if (A.kind() == TriKind::Hnn) {
    const auto& inc = A.embedding(0);
    int z = static_cast<int>(A.diagonal()[0]->group->generator_count());
    RingElement zinv = RingElement::monomial(C, {{z, -1}});
    m(0, 0) = apply_morphism(inc, a.diag[0]);
    m(0, 1) = apply_morphism(inc, a.corner[0]) + apply_morphism(inc, a.corner[1]) * zinv;
    m(1, 1) = apply_morphism(A.embedding(1), a.diag[1]);
  } else {
    m(0, 0) = apply_morphism(A.embedding(0), a.diag[0]);
    m(1, 1) = apply_morphism(A.embedding(1), a.diag[1]);
    m(2, 2) = apply_morphism(A.embedding(2), a.diag[2]);
    m(0, 2) = apply_morphism(A.embedding(0), a.corner[0]);
    m(1, 2) = apply_morphism(A.embedding(1), a.corner[1]);
  }
  return m;
}

nlohmann::json LocalizationData::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (std::size_t k = 0; k < sigma.size(); ++k)
    s.push_back({{"name", "sigma" + std::to_string(k + 1)},
                 {"image", element_to_json(sigma_images[k], false)},
                 {"inverse", element_to_json(certified_inverses[k], false)}});
  return {{"target", ring_to_json(*target)}, {"sigma", s}, {"verified", report.verified},
          {"trusted", report.trusted}, {"failures", report.failures}};
}

LocalizationData localize(const TriangularRing& A) {
  LocalizationData L;
  L.target = A.target();
  const RingPtr& C = A.target();
  RingElement one = RingElement::one(C);
  for (std::size_t k = 0; k < 2; ++k) {
    TriElement s = A.zero();
    s.corner[k] = RingElement::one(A.kind() == TriKind::Hnn ? A.diagonal()[0] : A.diagonal()[k]);
    L.sigma.push_back(s);
    RMatrix m = lambda(A, s);
    RingElement img = A.kind() == TriKind::Hnn ? m(0, 1) : m(k, 2);
    L.sigma_images.push_back(img);
    L.certified_inverses.push_back(img.inverse_unit());
  }
  for (std::size_t k = 0; k < 2; ++k) {
    std::string name = "sigma" + std::to_string(k + 1);
    if (L.sigma_images[k] * L.certified_inverses[k] == one && L.certified_inverses[k] * L.sigma_images[k] == one)
      L.report.verified.push_back(name + " image times certified inverse is 1 on both sides");
    else
      L.report.failures.push_back(name + " inverse check failed");
  }
  // corner relation on generators of S
  const RingPtr& S = A.kind() == TriKind::Hnn ? A.diagonal()[1] : A.diagonal()[2];
  bool ok = true;
  for (std::size_t g = 0; g < S->group->generator_count(); ++g) {
    RingElement s = RingElement::monomial(S, generator(static_cast<int>(g)));
    for (std::size_t k = 0; k < 2; ++k) {
      // lambda(sigma_k * s) = lambda(sigma_k) lambda(s)
      TriElement ds = A.zero();
      ds.diag[A.size() - 1] = s;
      RMatrix lhs = lambda(A, A.mul(L.sigma[k], ds));
      RMatrix rhs = lambda(A, L.sigma[k]) * lambda(A, ds);
      ok = ok && lhs == rhs;
    }
  }
  if (ok)
    L.report.verified.push_back(A.kind() == TriKind::Hnn
                                    ? "corner map (x, y) -> x + y z^-1 respects the S-action: z^-1 alpha(s) = beta(s) z^-1"
                                    : "corner maps respect the S-action: i1(s) = i2(s) in C");
  else
    L.report.failures.push_back("corner entry map does not respect the right S-action");
  L.report.trusted.push_back("edge maps injective (hypothesis of the identification with M_k(C))");
  return L;
}

ValidationReport check_entry_maps(const TriangularRing& A, const std::vector<std::pair<TriElement, TriElement>>& pairs) {
  ValidationReport r;
  std::size_t bad = 0;
  for (const auto& [a, b] : pairs) {
    if (!(lambda(A, A.mul(a, b)) == lambda(A, a) * lambda(A, b))) ++bad;
    if (!(lambda(A, A.add(a, b)) == lambda(A, a) + lambda(A, b))) ++bad;
  }
  if (!(lambda(A, A.one()) == identity_matrix(A.target(), A.size()))) ++bad;
  if (bad)
    r.failures.push_back(std::to_string(bad) + " entry-map law violations");
  else
    r.verified.push_back("entry maps multiplicative and additive on " + std::to_string(pairs.size()) + " pairs, unital");
  return r;
}

// --- modules and chain duality ---------------------------------------------------

RMatrix adjoint(const RMatrix& m) { return m.transpose().map([](const RingElement& a) { return involute(a); }); }

namespace {

void require_hnn(const TriangularRing& A) {
  if (A.kind() != TriKind::Hnn) throw Error(ErrorKind::ShapeMismatch, "modules are implemented over the 2 x 2 ring");
}

const FormData& require_form(const TriangularRing& A) {
  if (!A.form()) throw Error(ErrorKind::NoFormData, "chain duality needs a symmetric form on B");
  return *A.form();
}

RingPtr r1(const TriangularRing& A) { return A.diagonal()[0]; }
RingPtr r2(const TriangularRing& A) { return A.diagonal()[1]; }

}  // namespace

TriModule column_module(const TriangularRing& A, std::size_t i) {
  require_hnn(A);
  std::size_t n = A.corner_rank();
  if (i == 1) return {1, 0, zero_matrix(r1(A), 0, 1), std::nullopt, std::nullopt};
  if (i == 2) return {n, 1, identity_matrix(r1(A), n), std::nullopt, std::nullopt};
  throw Error(ErrorKind::ShapeMismatch, "column index out of range");
}

TriModule direct_sum(const TriangularRing& A, const TriModule& a, const TriModule& b) {
  require_hnn(A);
  TriModule s{a.m1 + b.m1, a.m2 + b.m2, zero_matrix(r1(A), a.mu.rows() + b.mu.rows(), a.m1 + b.m1), std::nullopt,
              std::nullopt};
  s.mu.set_block(0, 0, a.mu);
  s.mu.set_block(a.mu.rows(), a.m1, b.mu);
  return s;
}

RMatrix tensor_corner(const TriangularRing& A, const RMatrix& f2) {
  require_hnn(A);
  std::size_t n = A.corner_rank();
  RMatrix out = zero_matrix(r1(A), f2.rows() * n, f2.cols() * n);
  for (std::size_t i = 0; i < f2.rows(); ++i)
    for (std::size_t j = 0; j < f2.cols(); ++j)
      if (!f2(i, j).is_zero()) out.set_block(i * n, j * n, A.right_action(f2(i, j)));
  return out;
}

bool is_module_map(const TriangularRing& A, const TriModule& M, const TriModule& N, const TriMap& f) {
  if (f.f1.rows() != M.m1 || f.f1.cols() != N.m1 || f.f2.rows() != M.m2 || f.f2.cols() != N.m2) return false;
  return M.mu * f.f1 == tensor_corner(A, f.f2) * N.mu;
}

ValidationReport validate_trimodule(const TriangularRing& A, const TriModule& M) {
  ValidationReport r;
  if (M.mu.rows() != A.corner_rank() * M.m2 || M.mu.cols() != M.m1)
    r.failures.push_back("structure map has the wrong shape");
  else
    r.verified.push_back("structure map B (x) M2 -> M1 defined on generators");
  if (M.relations1 || M.relations2)
    r.trusted.push_back("structure map compatible with the relations of the presented components");
  else
    r.verified.push_back("components free: balanced on generators automatically");
  return r;
}

TriComplex chain_dual(const TriangularRing& A, const TriModule& M) {
  require_hnn(A);
  const FormData& form = require_form(A);
  if (M.relations1 || M.relations2) throw Error(ErrorKind::NonFreeComponent, "chain duality needs free components");
  std::size_t n = A.corner_rank();
  TriComplex T;
  T.mods.push_back({n * M.m2, M.m2, identity_matrix(r1(A), n * M.m2), std::nullopt, std::nullopt});
  T.mods.push_back({M.m1, 0, zero_matrix(r1(A), 0, M.m1), std::nullopt, std::nullopt});
  T.d.push_back({zero_matrix(r1(A), 0, 0), zero_matrix(r2(A), 0, 0)});
  T.d.push_back({adjoint(M.mu) * block_diag(r1(A), form.beta_inv, M.m2), zero_matrix(r2(A), 0, M.m2)});
  return T;
}

TriComplex chain_dual(const TriangularRing& A, const TriComplex& C) {
  require_hnn(A);
  const FormData& form = require_form(A);
  if (C.top() != 1 || C.mods[1].m2 != 0)
    throw Error(ErrorKind::ShapeMismatch, "dual of a complex is implemented for 1-dimensional complexes (M1, 0) -> M'");
  std::size_t n = A.corner_rank();
  const TriModule& C0 = C.mods[0];
  const TriModule& C1 = C.mods[1];
  const RMatrix& d = C.d[1].f1;
  TriComplex T;
  std::size_t top1 = n * C0.m2;
  TriModule t0{top1 + C1.m1, C0.m2, zero_matrix(r1(A), top1, top1 + C1.m1), std::nullopt, std::nullopt};
  t0.mu.set_block(0, 0, identity_matrix(r1(A), top1));
  TriModule t1{C0.m1, 0, zero_matrix(r1(A), 0, C0.m1), std::nullopt, std::nullopt};
  RMatrix dd = zero_matrix(r1(A), C0.m1, top1 + C1.m1);
  dd.set_block(0, 0, adjoint(C0.mu) * block_diag(r1(A), form.beta_inv, C0.m2));
  dd.set_block(0, top1, -adjoint(d));
  T.mods = {t0, t1};
  T.d.push_back({zero_matrix(r1(A), 0, 0), zero_matrix(r2(A), 0, 0)});
  T.d.push_back({dd, zero_matrix(r2(A), 0, C0.m2)});
  return T;
}

DualityEquivalence double_dual_equivalence(const TriangularRing& A, const TriModule& M, const RMatrix& x) {
  const FormData& form = require_form(A);
  std::size_t n = A.corner_rank();
  std::size_t top1 = n * M.m2;
  DualityEquivalence e;
  e.tt = chain_dual(A, chain_dual(A, M));
  RingPtr R = r1(A);
  RMatrix f1 = zero_matrix(R, top1 + M.m1, M.m1);
  f1.set_block(0, 0, M.mu);
  f1.set_block(top1, 0, identity_matrix(R, M.m1));
  RMatrix y = identity_matrix(R, M.m1) - x * M.mu;
  RMatrix g1 = zero_matrix(R, M.m1, top1 + M.m1);
  g1.set_block(0, 0, x);
  g1.set_block(0, top1, y);
  e.f0 = {f1, identity_matrix(r2(A), M.m2)};
  e.g0 = {g1, identity_matrix(r2(A), M.m2)};
  e.h0 = zero_matrix(R, top1 + M.m1, top1);
  e.h0.set_block(top1, 0, -(x * block_diag(R, form.beta, M.m2)));
  return e;
}

std::vector<std::string> verify_equivalence(const TriangularRing& A, const TriModule& M, const DualityEquivalence& e) {
  std::vector<std::string> out;
  const TriModule& T0 = e.tt.mods[0];
  const TriModule& T1 = e.tt.mods[1];
  const TriMap& d = e.tt.d[1];
  RingPtr R = r1(A), S = r2(A);
  if (!is_module_map(A, T1, T0, d)) out.push_back("differential of TT is not a module map");
  if (!is_module_map(A, T0, M, e.f0)) out.push_back("f is not a module map");
  if (!is_module_map(A, M, T0, e.g0)) out.push_back("g is not a module map");
  TriMap h{e.h0, zero_matrix(S, T0.m2, 0)};
  if (!is_module_map(A, T0, T1, h)) out.push_back("homotopy is not a module map");
  if (!out.empty()) return out;
  if (!(d.f1 * e.f0.f1).is_zero()) out.push_back("f is not a chain map");
  if (!(e.g0.f1 * e.f0.f1 == identity_matrix(R, M.m1)) || !(e.g0.f2 * e.f0.f2 == identity_matrix(S, M.m2)))
    out.push_back("f after g is not the identity of M");
  if (!(d.f1 * e.h0 == identity_matrix(R, T1.m1))) out.push_back("homotopy fails in degree 1");
  if (!(identity_matrix(R, T0.m1) - e.f0.f1 * e.g0.f1 == e.h0 * d.f1)) out.push_back("homotopy fails in degree 0");
  if (!(e.f0.f2 * e.g0.f2 == identity_matrix(S, T0.m2))) out.push_back("homotopy fails on the second component");
  return out;
}

}  // namespace cohn
