#include "cohn/cwpairs.hpp"

namespace cohn {

namespace {

std::vector<Letters> edge_images(const PresentationComplex& p, const Group& G) {
  std::vector<Letters> out;
  for (const auto& e : p.edges) out.push_back(G.normalize(parse_letters(G, e.image ? *e.image : e.label)));
  return out;
}

// Follows an edge path from its natural start; returns {start, end}.
std::pair<std::size_t, std::size_t> walk(const PresentationComplex& p, const Letters& path, const std::string& what) {
  if (path.empty()) return {0, 0};
  const auto& first = p.edges.at(static_cast<std::size_t>(path.front().gen));
  std::size_t start = path.front().exp > 0 ? first.from : first.to, cur = start;
  for (const auto& l : path) {
    const auto& e = p.edges.at(static_cast<std::size_t>(l.gen));
    for (long k = 0; k < std::abs(l.exp); ++k) {
      std::size_t from = l.exp > 0 ? e.from : e.to, to = l.exp > 0 ? e.to : e.from;
      if (cur != from) throw Error(ErrorKind::ShapeMismatch, what + " is not a connected edge path");
      cur = to;
    }
  }
  return {start, cur};
}

Letters image_of_path(const Group& G, const std::vector<Letters>& images, const Letters& path) {
  Letters w;
  for (const auto& l : path)
    for (long k = 0; k < std::abs(l.exp); ++k) {
      const Letters& g = images.at(static_cast<std::size_t>(l.gen));
      append_merge(w, l.exp > 0 ? g : G.inverse(g));
    }
  return G.normalize(w);
}

void check_graph_with_one_vertex(const PresentationComplex& N) {
  if (N.vertices != 1 || !N.relators.empty())
    throw Error(ErrorKind::ShapeMismatch, "N must be a graph with a single vertex");
}

// f0 and f1 of a piece map, entries in the ring of the target piece.
std::vector<RMatrix> piece_chain_map(const PresentationComplex& N, const PresentationComplex& M, const PieceMap& f,
                                     const RingPtr& ring) {
  check_graph_with_one_vertex(N);
  const Group& G = *ring->group;
  if (f.vertex >= M.vertices) throw Error(ErrorKind::ShapeMismatch, "piece map vertex out of range");
  if (f.edges.size() != N.edges.size()) throw Error(ErrorKind::ShapeMismatch, "piece map needs one path per edge of N");
  RingElement g = RingElement::monomial(ring, G.normalize(parse_letters(G, f.translate)));
  RMatrix f0 = zero_matrix(ring, 1, M.vertices);
  f0(0, f.vertex) = g;
  RMatrix f1 = zero_matrix(ring, N.edges.size(), M.edges.size());
  auto A = M.edge_alphabet();
  auto images = edge_images(M, G);
  for (std::size_t k = 0; k < f.edges.size(); ++k) {
    Letters path = parse_letters(*A, f.edges[k]);
    auto [s, t] = walk(M, path, "image of edge " + N.edges[k].label);
    if (!path.empty() && (s != f.vertex || t != f.vertex))
      throw Error(ErrorKind::ShapeMismatch, "image of edge " + N.edges[k].label + " is not a loop at the image vertex");
    auto row = fox_row(ring, images, path, g);
    for (std::size_t j = 0; j < row.size(); ++j) f1(k, j) = row[j];
  }
  return {f0, f1};
}

}  // namespace

PresentationComplex PresentationComplex::presentation(std::vector<std::string> generators,
                                                      std::vector<std::string> relators, GroupPtr group) {
  PresentationComplex p;
  for (auto& g : generators) p.edges.push_back({std::move(g), 0, 0, std::nullopt});
  p.relators = std::move(relators);
  p.group = std::move(group);
  return p;
}

GroupPtr PresentationComplex::edge_alphabet() const {
  std::vector<std::string> labels;
  for (const auto& e : edges) labels.push_back(e.label);
  return Group::free(labels);
}

GroupPtr PresentationComplex::fundamental_group() const {
  if (group) return group;
  if (vertices != 1 || !relators.empty())
    throw Error(ErrorKind::InvalidGroup, "the fundamental group of this piece must be given");
  return edge_alphabet();
}

RingElement fox_derivative(const RingPtr& ring, const Letters& r, int gen) {
  std::size_t n = ring->group->generator_count();
  if (gen < 0 || static_cast<std::size_t>(gen) >= n) throw Error(ErrorKind::UnknownGenerator, "generator index");
  for (const auto& l : r)
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= n) throw Error(ErrorKind::UnknownGenerator, "letter in word");
  std::vector<Letters> images;
  for (std::size_t k = 0; k < n; ++k) images.push_back({{static_cast<int>(k), 1}});
  return fox_row(ring, images, r, RingElement::one(ring))[static_cast<std::size_t>(gen)];
}

std::vector<RingElement> fox_row(const RingPtr& ring, const std::vector<Letters>& edge_images, const Letters& path,
                                 const RingElement& start) {
  const Group& G = *ring->group;
  std::vector<RingElement> row(edge_images.size(), RingElement(ring));
  RingElement prefix = start;
  for (const auto& l : path) {
    auto k = static_cast<std::size_t>(l.gen);
    RingElement g = RingElement::monomial(ring, edge_images.at(k));
    RingElement ginv = RingElement::monomial(ring, G.inverse(edge_images[k]));
    for (long t = 0; t < std::abs(l.exp); ++t) {
      if (l.exp > 0) {
        row[k] += prefix;
        prefix = prefix * g;
      } else {
        prefix = prefix * ginv;
        row[k] -= prefix;
      }
    }
  }
  return row;
}

FreeChainComplex cellular_complex(const PresentationComplex& p, GroupPtr G, CoeffDomain coeffs) {
  if (!G) G = p.fundamental_group();
  RingPtr ring = make_ring(G, coeffs);
  auto images = edge_images(p, *G);
  auto A = p.edge_alphabet();
  for (const auto& e : p.edges)
    if (e.from >= p.vertices || e.to >= p.vertices)
      throw Error(ErrorKind::ShapeMismatch, "edge " + e.label + " has an endpoint out of range");
  RMatrix d1 = zero_matrix(ring, p.edges.size(), p.vertices);
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    d1(k, p.edges[k].to) += RingElement::monomial(ring, images[k]);
    d1(k, p.edges[k].from) -= RingElement::one(ring);
  }
  RMatrix d2 = zero_matrix(ring, p.relators.size(), p.edges.size());
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    Letters path = parse_letters(*A, p.relators[j]);
    if (word_length(A->normalize(path)) != word_length(path))
      throw Error(ErrorKind::Parse, "relator '" + p.relators[j] + "' is not freely reduced");
    auto [s, t] = walk(p, path, "relator '" + p.relators[j] + "'");
    if (s != t) throw Error(ErrorKind::ShapeMismatch, "relator '" + p.relators[j] + "' is not a closed path");
    auto row = fox_row(ring, images, path, RingElement::one(ring));
    for (std::size_t k = 0; k < row.size(); ++k) d2(j, k) = row[k];
  }
  std::vector<std::size_t> ranks = {p.vertices, p.edges.size()};
  std::vector<RMatrix> ds = {d1};
  if (!p.relators.empty()) {
    ranks.push_back(p.relators.size());
    ds.push_back(d2);
  }
  return FreeChainComplex::make(ring, ranks, ds);
}

std::vector<Letters> induced_group_map(const PresentationComplex& N, const PresentationComplex& M, const PieceMap& f) {
  check_graph_with_one_vertex(N);
  GroupPtr G = M.fundamental_group();
  auto images = edge_images(M, *G);
  auto A = M.edge_alphabet();
  Letters g = G->normalize(parse_letters(*G, f.translate));
  std::vector<Letters> out;
  for (const auto& path : f.edges)
    out.push_back(G->multiply(G->multiply(g, image_of_path(*G, images, parse_letters(*A, path))), G->inverse(g)));
  return out;
}

TriPtr pair_ring(const CWPairSpec& p) {
  CoeffDomain k = CoeffDomain::parse(p.coefficients);
  RingPtr S = make_ring(p.N.fundamental_group(), k);
  RingPtr R1 = make_ring(p.M1.fundamental_group(), k);
  auto first = RingMorphism::make(S, R1, induced_group_map(p.N, p.M1, p.first));
  if (!p.separating) return TriangularRing::hnn(first, RingMorphism::make(S, R1, induced_group_map(p.N, p.M1, p.second)));
  if (!p.M2) throw Error(ErrorKind::ShapeMismatch, "separating pair needs a second piece");
  RingPtr R2 = make_ring(p.M2->fundamental_group(), k);
  return TriangularRing::amalgam(first, RingMorphism::make(S, R2, induced_group_map(p.N, *p.M2, p.second)));
}

GroupPtr seifert_van_kampen(const CWPairSpec& p) { return pair_ring(p)->target()->group; }

AssemblyInput geometric_assembly_inputs(const CWPairSpec& p) {
  CoeffDomain k = CoeffDomain::parse(p.coefficients);
  AssemblyInput in{pair_ring(p), {}, {}, {}, {}};
  in.localization = localize(*in.ring);
  in.E = cellular_complex(p.N, p.N.fundamental_group(), k);
  in.D.push_back(cellular_complex(p.M1, p.M1.fundamental_group(), k));
  if (p.separating) in.D.push_back(cellular_complex(*p.M2, p.M2->fundamental_group(), k));
  const PresentationComplex& second = p.separating ? *p.M2 : p.M1;
  in.maps.push_back(piece_chain_map(p.N, p.M1, p.first, in.D[0].ring));
  in.maps.push_back(piece_chain_map(p.N, second, p.second, in.D.back().ring));
  return in;
}

FreeChainComplex augmented(const FreeChainComplex& c) {
  RingPtr T = make_ring(Group::trivial(), c.ring->coeffs);
  return induce(RingMorphism::make(c.ring, T, std::vector<Letters>(c.ring->group->generator_count())), c);
}

bool CWReport::ok() const {
  return assembly.report.ok() && matches_direct.value_or(true) && matches_expected.value_or(true);
}

nlohmann::json CWReport::to_json() const {
  nlohmann::json j = {{"complex", complex_to_json(assembly.complex)},
                      {"kept_cells", assembly.kept},
                      {"verified", assembly.report.verified},
                      {"trusted", assembly.report.trusted},
                      {"failures", assembly.report.failures},
                      {"augmented_homology", homology.to_json()},
                      {"ok", ok()}};
  j["matches_direct"] = matches_direct ? nlohmann::json(*matches_direct) : nlohmann::json(nullptr);
  j["matches_expected"] = matches_expected ? nlohmann::json(*matches_expected) : nlohmann::json(nullptr);
  return j;
}

CWReport cw_assemble(const CWPairSpec& p) {
  AssemblyInput in = geometric_assembly_inputs(p);
  CWReport rep{assemble(in), std::nullopt, {}, std::nullopt};
  const FreeChainComplex& C = rep.assembly.complex;
  if (p.direct) {
    FreeChainComplex direct = cellular_complex(*p.direct, C.ring->group, C.ring->coeffs);
    bool same = direct.ranks == C.ranks;
    for (int r = 1; same && r <= C.top(); ++r) same = direct.diff(r) == C.diff(r);
    rep.matches_direct = same;
  }
  rep.homology = homology(augmented(C));
  if (!p.expected.is_null()) {
    const auto& ranks = p.expected.at("ranks");
    bool same = ranks.size() == rep.homology.groups.size();
    for (std::size_t r = 0; same && r < ranks.size(); ++r) {
      const auto& g = rep.homology.groups[r];
      same = g.rank == ranks[r].get<std::size_t>();
      std::vector<std::string> tors;
      if (p.expected.contains("torsion")) tors = p.expected.at("torsion").at(r).get<std::vector<std::string>>();
      same = same && g.torsion == tors;
    }
    rep.matches_expected = same;
  }
  return rep;
}

// --- JSON ----------------------------------------------------------------------------

nlohmann::json PresentationComplex::to_json() const {
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json x = {{"label", e.label}, {"from", e.from}, {"to", e.to}};
    if (e.image) x["image"] = *e.image;
    es.push_back(x);
  }
  nlohmann::json j = {{"vertices", vertices}, {"edges", es}, {"relators", relators}};
  if (group) j["group"] = group_to_json(*group);
  return j;
}

PresentationComplex PresentationComplex::from_json(const nlohmann::json& j) {
  try {
    PresentationComplex p;
    p.vertices = j.value("vertices", std::size_t{1});
    if (j.contains("generators"))
      for (const auto& g : j.at("generators")) p.edges.push_back({g.get<std::string>(), 0, 0, std::nullopt});
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        CellEdge c{e.at("label").get<std::string>(), e.value("from", std::size_t{0}), e.value("to", std::size_t{0}),
                   std::nullopt};
        if (e.contains("image")) c.image = e.at("image").get<std::string>();
        p.edges.push_back(c);
      }
    if (j.contains("relators")) p.relators = j.at("relators").get<std::vector<std::string>>();
    if (j.contains("group")) p.group = group_from_json(j.at("group"));
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("presentation complex: ") + ex.what());
  }
}

nlohmann::json PieceMap::to_json() const { return {{"vertex", vertex}, {"edges", edges}, {"translate", translate}}; }

PieceMap PieceMap::from_json(const nlohmann::json& j) {
  try {
    return {j.value("vertex", std::size_t{0}), j.value("edges", std::vector<std::string>{}),
            j.value("translate", std::string{})};
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("piece map: ") + ex.what());
  }
}

nlohmann::json CWPairSpec::to_json() const {
  nlohmann::json j = {{"format_version", 1},   {"name", name},           {"separating", separating},
                      {"coefficients", coefficients}, {"N", N.to_json()}, {"M1", M1.to_json()},
                      {"first", first.to_json()},     {"second", second.to_json()}};
  if (M2) j["M2"] = M2->to_json();
  if (direct) j["direct"] = direct->to_json();
  if (!expected.is_null()) j["expected_homology"] = expected;
  return j;
}

CWPairSpec CWPairSpec::from_json(const nlohmann::json& j) {
  try {
    CWPairSpec p;
    p.name = j.value("name", std::string{});
    p.separating = j.value("separating", false);
    p.coefficients = j.value("coefficients", std::string{"Z"});
    p.N = PresentationComplex::from_json(j.at("N"));
    p.M1 = PresentationComplex::from_json(j.at("M1"));
    if (j.contains("M2")) p.M2 = PresentationComplex::from_json(j.at("M2"));
    p.first = PieceMap::from_json(j.at("first"));
    p.second = PieceMap::from_json(j.at("second"));
    if (j.contains("direct")) p.direct = PresentationComplex::from_json(j.at("direct"));
    if (j.contains("expected_homology")) p.expected = j.at("expected_homology");
    if (p.separating && !p.M2) throw Error(ErrorKind::Parse, "separating pair needs M2");
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("cw pair: ") + ex.what());
  }
}

}  // namespace cohn
