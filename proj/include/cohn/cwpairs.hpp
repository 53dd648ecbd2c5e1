#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohn/assembly.hpp"

namespace cohn {

/// 1-cell of a presentation complex. `image` is the element of the piece group
/// read along the edge in the universal cover; by default the label itself.
struct CellEdge {
  std::string label;
  std::size_t from = 0, to = 0;
  std::optional<std::string> image;
};

/// 2-complex with `vertices` 0-cells, edges, and 2-cells attached along closed
/// edge paths (relators, written in edge labels). group is pi_1 as a supported
/// descriptor; when absent the complex must have one vertex and no relators
/// and the group is free on the edge labels.
struct PresentationComplex {
  std::size_t vertices = 1;
  std::vector<CellEdge> edges;
  std::vector<std::string> relators;
  GroupPtr group;

  /// Presentation <labels | relators> with one vertex.
  static PresentationComplex presentation(std::vector<std::string> generators, std::vector<std::string> relators,
                                          GroupPtr group = nullptr);
  GroupPtr fundamental_group() const;
  GroupPtr edge_alphabet() const;  // free group on the edge labels
  nlohmann::json to_json() const;
  static PresentationComplex from_json(const nlohmann::json& j);
};

/// Free derivative d r / d x_gen of a word in the generators of the ring's group,
/// evaluated in the group ring.
RingElement fox_derivative(const RingPtr& ring, const Letters& r, int gen);

/// Fox row of an edge path: for every edge the sum of signed lifts, starting
/// from `start` in the group. Edge images are elements of the ring's group.
std::vector<RingElement> fox_row(const RingPtr& ring, const std::vector<Letters>& edge_images, const Letters& path,
                                 const RingElement& start);

/// Universal cover complex C_2 -> C_1 -> C_0 over Z[G] (or other coefficients).
/// The group defaults to the complex's own fundamental group. d^2 = 0 is checked.
FreeChainComplex cellular_complex(const PresentationComplex& p, GroupPtr G = nullptr,
                                  CoeffDomain coeffs = CoeffDomain::integers());

/// Cellular inclusion of the one-vertex graph N into a piece: the vertex goes to
/// `vertex`, edge k of N to the edge path edges[k], all translated by `translate`.
struct PieceMap {
  std::size_t vertex = 0;
  std::vector<std::string> edges;
  std::string translate;
  nlohmann::json to_json() const;
  static PieceMap from_json(const nlohmann::json& j);
};

/// Two-sided CW pair. Non-separating: M = M1 with the two ends of a collar on N
/// attached by first (alpha) and second (beta). Separating: M = M1 u N x I u M2
/// with first into M1 and second into M2.
struct CWPairSpec {
  std::string name;
  bool separating = false;
  PresentationComplex N, M1;
  std::optional<PresentationComplex> M2;
  PieceMap first, second;
  std::string coefficients = "Z";
  std::optional<PresentationComplex> direct;  // complex for M itself, over pi_1(M)
  nlohmann::json expected;                    // optional expected augmented homology
  nlohmann::json to_json() const;
  static CWPairSpec from_json(const nlohmann::json& j);
};

/// Group images of the generators of pi_1(N) under a piece map.
std::vector<Letters> induced_group_map(const PresentationComplex& N, const PresentationComplex& M, const PieceMap& f);

TriPtr pair_ring(const CWPairSpec& p);
GroupPtr seifert_van_kampen(const CWPairSpec& p);
AssemblyInput geometric_assembly_inputs(const CWPairSpec& p);

/// Complex over the trivial group obtained by augmentation.
FreeChainComplex augmented(const FreeChainComplex& c);

/// Full pipeline: assemble, compare with the direct complex and the expected homology.
struct CWReport {
  AssemblyResult assembly;
  std::optional<bool> matches_direct;
  HomologySummary homology;
  std::optional<bool> matches_expected;
  bool ok() const;
  nlohmann::json to_json() const;
};
CWReport cw_assemble(const CWPairSpec& p);

}  // namespace cohn
