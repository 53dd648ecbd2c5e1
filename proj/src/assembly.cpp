#include "cohn/assembly.hpp"

#include <algorithm>

namespace cohn {

namespace {

bool is_plus_minus_one(const RingElement& a) {
  if (a.terms().size() != 1) return false;
  const auto& [w, c] = *a.terms().begin();
  return w.empty() && (c.is_one() || (-c).is_one());
}

struct Elimination {
  RMatrix G, U;
  std::vector<std::size_t> pivot;  // per row
  std::vector<RingElement> pivot_inv;
  std::vector<std::size_t> kept;
};

// Row reduction of F to unit pivots, recording the row operations in U (G = U F).
Elimination eliminate(const RingPtr& ring, const RMatrix& F, const std::string& where) {
  Elimination e{F, identity_matrix(ring, F.rows()), {}, {}, {}};
  std::vector<bool> used(F.cols(), false);
  for (std::size_t r = 0; r < F.rows(); ++r) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < F.cols(); ++c) {
      if (used[c] || !e.G(r, c).is_unit_monomial()) continue;
      if (!best || (is_plus_minus_one(e.G(r, c)) && !is_plus_minus_one(e.G(r, *best)))) best = c;
    }
    if (!best)
      throw Error(ErrorKind::NotSplitInjective, "no unit pivot for row " + std::to_string(r) + where);
    std::size_t c = *best;
    used[c] = true;
    RingElement uinv = e.G(r, c).inverse_unit();
    for (std::size_t k = 0; k < F.rows(); ++k) {
      if (k == r || e.G(k, c).is_zero()) continue;
      RingElement f = e.G(k, c) * uinv;
      for (std::size_t j = 0; j < F.cols(); ++j)
        if (!e.G(r, j).is_zero()) e.G(k, j) -= f * e.G(r, j);
      for (std::size_t j = 0; j < F.rows(); ++j)
        if (!e.U(r, j).is_zero()) e.U(k, j) -= f * e.U(r, j);
    }
    e.pivot.push_back(c);
    e.pivot_inv.push_back(uinv);
  }
  for (std::size_t c = 0; c < F.cols(); ++c)
    if (!used[c]) e.kept.push_back(c);
  return e;
}

FreeChainComplex padded(const FreeChainComplex& c, std::size_t degrees) {
  if (c.ranks.size() >= degrees) return c;
  std::vector<std::size_t> ranks = c.ranks;
  ranks.resize(degrees, 0);
  std::vector<RMatrix> ds;
  for (std::size_t r = 1; r < degrees; ++r)
    ds.push_back(r < c.ranks.size() ? c.d[r] : zero_matrix(c.ring, ranks[r], ranks[r - 1]));
  return FreeChainComplex::make(c.ring, ranks, ds);
}

FreeChainComplex direct_sum(const FreeChainComplex& a, const FreeChainComplex& b) {
  std::size_t n = std::max(a.ranks.size(), b.ranks.size());
  FreeChainComplex pa = padded(a, n), pb = padded(b, n);
  std::vector<std::size_t> ranks(n);
  for (std::size_t r = 0; r < n; ++r) ranks[r] = pa.ranks[r] + pb.ranks[r];
  std::vector<RMatrix> ds;
  for (std::size_t r = 1; r < n; ++r) {
    RMatrix m = zero_matrix(a.ring, ranks[r], ranks[r - 1]);
    m.set_block(0, 0, pa.d[r]);
    m.set_block(pa.ranks[r], pa.ranks[r - 1], pb.d[r]);
    ds.push_back(m);
  }
  return FreeChainComplex::make(a.ring, ranks, ds);
}

nlohmann::json matrices_json(const std::vector<RMatrix>& ms) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

std::vector<RMatrix> matrices_from_json(const nlohmann::json& j, const RingPtr& r,
                                        const std::function<std::pair<std::size_t, std::size_t>(std::size_t)>& shape) {
  std::vector<RMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    auto [rows, cols] = shape(k);
    out.push_back(matrix_from_json(j[k], r, rows, cols));
  }
  return out;
}

}  // namespace

SplitCokernel split_cokernel(const FreeChainComplex& E0, const FreeChainComplex& D, const std::vector<RMatrix>& F) {
  if (E0.ranks.size() > D.ranks.size()) throw Error(ErrorKind::ShapeMismatch, "E has more degrees than D");
  if (!E0.ring->same_as(*D.ring)) throw Error(ErrorKind::MixedRings, "E and D must be over the same ring");
  FreeChainComplex E = padded(E0, D.ranks.size());
  const RingPtr& ring = D.ring;
  SplitCokernel out;
  std::vector<std::size_t> ranks;
  for (int r = 0; r <= D.top(); ++r) {
    auto u = static_cast<std::size_t>(r);
    RMatrix f = u < F.size() ? F[u] : zero_matrix(ring, E.rank(r), D.rank(r));
    if (f.rows() != E.rank(r) || f.cols() != D.rank(r))
      throw Error(ErrorKind::ShapeMismatch, "map in degree " + std::to_string(r) + " has the wrong shape");
    Elimination el = eliminate(ring, f, " in degree " + std::to_string(r));
    std::size_t nk = el.kept.size();
    RMatrix p = zero_matrix(ring, D.rank(r), nk), sigma = zero_matrix(ring, nk, D.rank(r));
    for (std::size_t i = 0; i < nk; ++i) {
      p(el.kept[i], i) = RingElement::one(ring);
      sigma(i, el.kept[i]) = RingElement::one(ring);
    }
    RMatrix rho0 = zero_matrix(ring, D.rank(r), E.rank(r));
    for (std::size_t e = 0; e < el.pivot.size(); ++e) {
      rho0(el.pivot[e], e) = el.pivot_inv[e];
      for (std::size_t i = 0; i < nk; ++i)
        if (!el.G(e, el.kept[i]).is_zero()) p(el.pivot[e], i) = -(el.pivot_inv[e] * el.G(e, el.kept[i]));
    }
    out.cert.i.push_back(f);
    out.cert.p.push_back(p);
    out.cert.rho.push_back(rho0 * el.U);
    out.cert.sigma.push_back(sigma);
    out.kept.push_back(el.kept);
    ranks.push_back(nk);
  }
  std::vector<RMatrix> ds;
  for (std::size_t r = 1; r < ranks.size(); ++r) ds.push_back(out.cert.sigma[r] * D.d[r] * out.cert.p[r - 1]);
  out.coker = FreeChainComplex::make(ring, ranks, ds);
  auto bad = split_defects(E, D, out.coker, out.cert);
  if (!bad.empty()) throw Error(ErrorKind::NotSplitInjective, bad.front());
  return out;
}

bool verify_certificate(const FreeChainComplex& E, const FreeChainComplex& D, const FreeChainComplex& C,
                        const Certificate& cert) {
  if (cert.i.size() < D.ranks.size() || cert.p.size() < D.ranks.size()) return false;
  return split_defects(padded(E, D.ranks.size()), D, C, cert).empty();
}

nlohmann::json certificate_to_json(const Certificate& c) {
  return {{"i", matrices_json(c.i)}, {"p", matrices_json(c.p)}, {"rho", matrices_json(c.rho)},
          {"sigma", matrices_json(c.sigma)}};
}

Certificate certificate_from_json(const nlohmann::json& j, const FreeChainComplex& E, const FreeChainComplex& D,
                                  const FreeChainComplex& C) {
  const RingPtr& r = D.ring;
  auto e = [&](std::size_t k) { return E.rank(static_cast<int>(k)); };
  auto d = [&](std::size_t k) { return D.rank(static_cast<int>(k)); };
  auto c = [&](std::size_t k) { return C.rank(static_cast<int>(k)); };
  try {
    Certificate out;
    out.i = matrices_from_json(j.at("i"), r, [&](std::size_t k) { return std::pair{e(k), d(k)}; });
    out.p = matrices_from_json(j.at("p"), r, [&](std::size_t k) { return std::pair{d(k), c(k)}; });
    out.rho = matrices_from_json(j.at("rho"), r, [&](std::size_t k) { return std::pair{d(k), e(k)}; });
    out.sigma = matrices_from_json(j.at("sigma"), r, [&](std::size_t k) { return std::pair{c(k), d(k)}; });
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("certificate: ") + ex.what());
  }
}

// --- modules ---------------------------------------------------------------------

nlohmann::json ModulePresentation::to_json() const {
  nlohmann::json j = {{"ring", ring_to_json(*ring)}, {"generators", generators},
                      {"relations", matrix_to_json(relations)}};
  if (free_rank) {
    j["free_rank"] = *free_rank;
    j["projection"] = matrix_to_json(projection);
  } else {
    j["free_rank"] = nullptr;
  }
  return j;
}

ModulePresentation present_module(const RingPtr& ring, std::size_t generators, const RMatrix& relations) {
  if (relations.cols() != generators) throw Error(ErrorKind::ShapeMismatch, "relations must have one column per generator");
  ModulePresentation P{ring, generators, relations, std::nullopt, {}, {}};
  try {
    Elimination el = eliminate(ring, relations, "");
    std::size_t nk = el.kept.size();
    P.projection = zero_matrix(ring, generators, nk);
    P.section = zero_matrix(ring, nk, generators);
    for (std::size_t i = 0; i < nk; ++i) {
      P.projection(el.kept[i], i) = RingElement::one(ring);
      P.section(i, el.kept[i]) = RingElement::one(ring);
    }
    for (std::size_t e = 0; e < el.pivot.size(); ++e)
      for (std::size_t i = 0; i < nk; ++i)
        if (!el.G(e, el.kept[i]).is_zero())
          P.projection(el.pivot[e], i) = -(el.pivot_inv[e] * el.G(e, el.kept[i]));
    if ((relations * P.projection).is_zero() && P.section * P.projection == identity_matrix(ring, nk))
      P.free_rank = nk;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSplitInjective) throw;
  }
  return P;
}

ModulePresentation assemble_module(const TriangularRing& A, const LocalizationData& L, const TriModule& M) {
  if (A.kind() != TriKind::Hnn) throw Error(ErrorKind::ShapeMismatch, "module assembly is implemented for the 2 x 2 ring");
  std::size_t n = A.corner_rank();
  if (M.mu.rows() != n * M.m2 || M.mu.cols() != M.m1) throw Error(ErrorKind::ShapeMismatch, "structure map shape");
  const RingPtr& C = L.target;
  // basis element b_j (x) m_k of B (x) M2 goes to (image of mu, -lambda(b_j) m_k)
  RMatrix rel = zero_matrix(C, n * M.m2, M.m1 + M.m2);
  RMatrix mu = induce_matrix(A.embedding(0), M.mu);
  for (std::size_t k = 0; k < M.m2; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t row = k * n + j;
      for (std::size_t c = 0; c < M.m1; ++c) rel(row, c) = mu(row, c);
      rel(row, M.m1 + k) = -L.sigma_images.at(j);
    }
  return present_module(C, M.m1 + M.m2, rel);
}

std::optional<ModuleIsomorphism> module_isomorphism(const ModulePresentation& P, const ModulePresentation& Q) {
  if (!P.free_rank || !Q.free_rank || *P.free_rank != *Q.free_rank) return std::nullopt;
  ModuleIsomorphism iso{P.projection * Q.section, Q.projection * P.section};
  // well defined and mutually inverse modulo relations
  if (!(P.relations * iso.f * Q.projection).is_zero()) return std::nullopt;
  if (!(Q.relations * iso.g * P.projection).is_zero()) return std::nullopt;
  if (!(iso.f * iso.g * P.projection == P.projection)) return std::nullopt;
  if (!(iso.g * iso.f * Q.projection == Q.projection)) return std::nullopt;
  return iso;
}

// --- chain level assembly --------------------------------------------------------------

ValidationReport AssemblyInput::validate() const {
  ValidationReport r;
  const TriangularRing& A = *ring;
  std::size_t want = A.kind() == TriKind::Hnn ? 1 : 2;
  if (D.size() != want || maps.size() != 2) {
    r.failures.push_back("wrong number of component complexes or structure maps");
    return r;
  }
  const RingPtr& S = A.kind() == TriKind::Hnn ? A.diagonal()[1] : A.diagonal()[2];
  if (!E.ring->same_as(*S)) r.failures.push_back("E is not over the edge ring");
  for (std::size_t k = 0; k < D.size(); ++k)
    if (!D[k].ring->same_as(*A.diagonal()[k])) r.failures.push_back("component complex over the wrong ring");
  if (!r.failures.empty()) return r;
  const char* names[2] = {A.kind() == TriKind::Hnn ? "i_alpha" : "i_1", A.kind() == TriKind::Hnn ? "i_beta" : "i_2"};
  for (std::size_t k = 0; k < 2; ++k) {
    const FreeChainComplex& target = D[A.kind() == TriKind::Hnn ? 0 : k];
    auto bad = chain_map_defects(padded(induce(A.corner_maps()[k], E), target.ranks.size()), target, maps[k]);
    if (bad.empty())
      r.verified.push_back(std::string(names[k]) + " is a chain map after induction");
    else
      for (const auto& b : bad) r.failures.push_back(std::string(names[k]) + ": " + b);
  }
  return r;
}

nlohmann::json AssemblyResult::to_json() const {
  return {{"complex", complex_to_json(complex)}, {"kept_cells", kept}, {"certificate", certificate_to_json(cert)},
          {"verified", report.verified}, {"trusted", report.trusted}, {"failures", report.failures}};
}

namespace {

AssemblyResult finish_assembly(const FreeChainComplex& E, const FreeChainComplex& D, std::vector<RMatrix> F,
                               ValidationReport report) {
  SplitCokernel sc = split_cokernel(E, D, F);
  AssemblyResult out{sc.coker, padded(E, D.ranks.size()), D, std::move(F), sc.cert, sc.kept, std::move(report)};
  if (verify_certificate(out.E, out.D, out.complex, out.cert))
    out.report.verified.push_back("0 -> E -> D -> coker -> 0 split exact (certificate checked)");
  else
    out.report.failures.push_back("certificate identities fail");
  return out;
}

void require_valid(const AssemblyInput& in) {
  auto r = in.validate();
  if (!r.ok()) throw Error(ErrorKind::RelationViolation, r.failures.front());
}

}  // namespace

AssemblyResult assemble_hnn(const AssemblyInput& in) {
  const TriangularRing& A = *in.ring;
  if (A.kind() != TriKind::Hnn) throw Error(ErrorKind::ShapeMismatch, "not an HNN instance");
  require_valid(in);
  const RingPtr& L = A.target();
  int zi = static_cast<int>(A.diagonal()[0]->group->generator_count());
  RingElement z = RingElement::monomial(L, {{zi, 1}});
  FreeChainComplex D = induce(A.embedding(0), in.D[0]);
  FreeChainComplex E = padded(induce(A.embedding(1), in.E), D.ranks.size());
  std::vector<RMatrix> F;
  for (std::size_t r = 0; r < D.ranks.size(); ++r) {
    auto at = [&](const std::vector<RMatrix>& m) {
      return r < m.size() ? induce_matrix(A.embedding(0), m[r]) : zero_matrix(L, E.ranks[r], D.ranks[r]);
    };
    F.push_back(at(in.maps[0]) - z * at(in.maps[1]));
  }
  ValidationReport rep = in.validate();
  rep.merge(in.localization.report);
  return finish_assembly(E, D, std::move(F), rep);
}

AssemblyResult assemble_amalgam(const AssemblyInput& in) {
  const TriangularRing& A = *in.ring;
  if (A.kind() != TriKind::Amalgam) throw Error(ErrorKind::ShapeMismatch, "not an amalgam instance");
  require_valid(in);
  const RingPtr& L = A.target();
  FreeChainComplex D1 = induce(A.embedding(0), in.D[0]), D2 = induce(A.embedding(1), in.D[1]);
  FreeChainComplex D = direct_sum(D1, D2);
  D1 = padded(D1, D.ranks.size());
  FreeChainComplex E = padded(induce(A.embedding(2), in.E), D.ranks.size());
  std::vector<RMatrix> F;
  for (std::size_t r = 0; r < D.ranks.size(); ++r) {
    RMatrix f = zero_matrix(L, E.ranks[r], D.ranks[r]);
    if (r < in.maps[0].size()) f.set_block(0, 0, induce_matrix(A.embedding(0), in.maps[0][r]));
    if (r < in.maps[1].size()) f.set_block(0, D1.ranks[r], -induce_matrix(A.embedding(1), in.maps[1][r]));
    F.push_back(f);
  }
  ValidationReport rep = in.validate();
  rep.merge(in.localization.report);
  return finish_assembly(E, D, std::move(F), rep);
}

AssemblyResult assemble(const AssemblyInput& in) {
  return in.ring->kind() == TriKind::Hnn ? assemble_hnn(in) : assemble_amalgam(in);
}

// --- Mayer-Vietoris ------------------------------------------------------------------

MVPresentation mv_construct_laurent(const FreeChainComplex& C) {
  if (!C.ring->is_laurent()) throw Error(ErrorKind::UnsupportedRing, "expected a Laurent polynomial ring");
  const RingPtr& L = C.ring;
  RingPtr R = make_ring(Group::trivial(), L->coeffs);
  RingMorphism up = RingMorphism::make(R, L, {});
  RingElement z = from_laurent(L, {{1, Coeff::in(L->coeffs, 1)}});
  int top = C.top();
  if (top < 0) throw Error(ErrorKind::ShapeMismatch, "empty complex");
  // windows, top degree down
  std::vector<std::pair<long, long>> W(C.ranks.size(), {0, 0});
  for (int r = top; r >= 1; --r) {
    auto [lo, hi] = W[static_cast<std::size_t>(r)];
    auto& below = W[static_cast<std::size_t>(r - 1)];
    const RMatrix& d = C.d[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        for (const auto& [k, c] : laurent_terms(d(i, j))) {
          below.first = std::min(below.first, lo + k);
          below.second = std::max(below.second, hi + k);
        }
  }
  auto width = [&](int r, bool edge) {
    auto [lo, hi] = W[static_cast<std::size_t>(r)];
    return static_cast<std::size_t>(hi - lo + (edge ? 0 : 1));
  };
  // basis of D_r: (e, j) -> e * width + (j - lo); of E_r: j in [lo + 1, hi]
  auto build = [&](bool edge) {
    std::vector<std::size_t> ranks;
    for (int r = 0; r <= top; ++r) ranks.push_back(C.rank(r) * width(r, edge));
    std::vector<RMatrix> ds;
    for (int r = 1; r <= top; ++r) {
      RMatrix m = zero_matrix(R, ranks[static_cast<std::size_t>(r)], ranks[static_cast<std::size_t>(r - 1)]);
      long lo = W[static_cast<std::size_t>(r)].first + (edge ? 1 : 0);
      long lo1 = W[static_cast<std::size_t>(r - 1)].first + (edge ? 1 : 0);
      std::size_t w = width(r, edge), w1 = width(r - 1, edge);
      const RMatrix& d = C.d[static_cast<std::size_t>(r)];
      for (std::size_t e = 0; e < d.rows(); ++e)
        for (std::size_t t = 0; t < w; ++t)
          for (std::size_t f = 0; f < d.cols(); ++f)
            for (const auto& [k, c] : laurent_terms(d(e, f))) {
              long col = lo + static_cast<long>(t) + k - lo1;
              m(e * w + t, f * w1 + static_cast<std::size_t>(col)) += RingElement::constant(R, c);
            }
      ds.push_back(m);
    }
    return FreeChainComplex::make(R, ranks, ds);
  };
  MVPresentation P;
  P.windows = W;
  P.D = build(false);
  P.E = build(true);
  P.D_up = induce(up, P.D);
  P.E_up = induce(up, P.E);
  for (int r = 0; r <= top; ++r) {
    std::size_t w = width(r, false), we = width(r, true);
    RMatrix F = zero_matrix(L, P.E.rank(r), P.D.rank(r));
    for (std::size_t e = 0; e < C.rank(r); ++e)
      for (std::size_t t = 0; t < we; ++t) {
        // z^j e with j = lo + 1 + t sits at D position t + 1; z^-1 of it at position t
        F(e * we + t, e * w + t + 1) = RingElement::one(L);
        F(e * we + t, e * w + t) = -z;
      }
    P.map.push_back(F);
  }
  SplitCokernel sc = split_cokernel(P.E_up, P.D_up, P.map);
  P.coker = sc.coker;
  P.cert = sc.cert;
  for (int r = 0; r <= top; ++r) {
    auto u = static_cast<std::size_t>(r);
    std::size_t w = width(r, false);
    long lo = W[u].first;
    const auto& kept = sc.kept[u];
    RMatrix iso = zero_matrix(L, kept.size(), C.rank(r));
    for (std::size_t i = 0; i < kept.size(); ++i)
      iso(i, kept[i] / w) = from_laurent(L, {{lo + static_cast<long>(kept[i] % w), Coeff::in(L->coeffs, 1)}});
    RMatrix inv = zero_matrix(L, C.rank(r), kept.size());
    RingElement zlo = from_laurent(L, {{-lo, Coeff::in(L->coeffs, 1)}});
    for (std::size_t e = 0; e < C.rank(r); ++e)
      for (std::size_t i = 0; i < kept.size(); ++i) inv(e, i) = zlo * sc.cert.p[u](e * w, i);
    P.iso.push_back(iso);
    P.iso_inverse.push_back(inv);
  }
  return P;
}

bool mv_verify(const MVPresentation& p, const FreeChainComplex& C) {
  if (!p.coker.ring->same_as(*C.ring) || p.coker.ranks.size() != C.ranks.size())
    throw Error(ErrorKind::ShapeMismatch, "presentation and complex do not match");
  if (!verify_certificate(p.E_up, p.D_up, p.coker, p.cert)) return false;
  if (p.iso.size() != C.ranks.size() || p.iso_inverse.size() != C.ranks.size()) return false;
  for (int r = 0; r <= C.top(); ++r) {
    auto u = static_cast<std::size_t>(r);
    if (p.D_up.rank(r) != C.rank(r) + p.E_up.rank(r)) return false;
    if (p.iso[u].rows() != p.coker.rank(r) || p.iso[u].cols() != C.rank(r)) return false;
    if (p.iso_inverse[u].rows() != C.rank(r) || p.iso_inverse[u].cols() != p.coker.rank(r)) return false;
    if (!(p.iso[u] * p.iso_inverse[u] == p.coker.id(r)) || !(p.iso_inverse[u] * p.iso[u] == C.id(r))) return false;
  }
  return chain_map_defects(p.coker, C, p.iso).empty() && chain_map_defects(C, p.coker, p.iso_inverse).empty();
}

MVPresentation mv_from_assembly(const AssemblyResult& a) {
  MVPresentation P;
  P.E = P.E_up = a.E;
  P.D = P.D_up = a.D;
  P.coker = a.complex;
  P.map = a.map;
  P.cert = a.cert;
  for (int r = 0; r <= a.complex.top(); ++r) {
    P.iso.push_back(a.complex.id(r));
    P.iso_inverse.push_back(a.complex.id(r));
  }
  return P;
}

nlohmann::json MVPresentation::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& [lo, hi] : windows) w.push_back({lo, hi});
  return {{"E", complex_to_json(E)},
          {"D", complex_to_json(D)},
          {"E_induced", complex_to_json(E_up)},
          {"D_induced", complex_to_json(D_up)},
          {"cokernel", complex_to_json(coker)},
          {"map", matrices_json(map)},
          {"iso", matrices_json(iso)},
          {"iso_inverse", matrices_json(iso_inverse)},
          {"windows", w},
          {"certificate", certificate_to_json(cert)}};
}

MVPresentation MVPresentation::from_json(const nlohmann::json& j) {
  try {
    MVPresentation P;
    P.E = complex_from_json(j.at("E"));
    P.D = complex_from_json(j.at("D"));
    P.E_up = complex_from_json(j.at("E_induced"));
    P.D_up = complex_from_json(j.at("D_induced"));
    P.coker = complex_from_json(j.at("cokernel"));
    const RingPtr& L = P.coker.ring;
    auto rk = [](const FreeChainComplex& c, std::size_t k) { return c.rank(static_cast<int>(k)); };
    P.map = matrices_from_json(j.at("map"), L, [&](std::size_t k) { return std::pair{rk(P.E_up, k), rk(P.D_up, k)}; });
    P.iso = matrices_from_json(j.at("iso"), L, [&](std::size_t k) { return std::pair{rk(P.coker, k), rk(P.coker, k)}; });
    P.iso_inverse = matrices_from_json(j.at("iso_inverse"), L,
                                       [&](std::size_t k) { return std::pair{rk(P.coker, k), rk(P.coker, k)}; });
    for (const auto& w : j.at("windows")) P.windows.emplace_back(w.at(0).get<long>(), w.at(1).get<long>());
    P.cert = certificate_from_json(j.at("certificate"), P.E_up, P.D_up, P.coker);
    return P;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("presentation: ") + ex.what());
  }
}

}  // namespace cohn
