#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohn/chains.hpp"
#include "cohn/trimat.hpp"

namespace cohn {

using Certificate = SplitCertificate<RingElement>;

/// Degreewise cokernel of a split injective chain map F : E -> D over one ring.
/// Pivots are unit entries, preferring +-1; pivot cells of D are eliminated and
/// the remaining cells (kept) form the basis of the cokernel.
struct SplitCokernel {
  FreeChainComplex coker;
  Certificate cert;  // i = F, p : D -> coker, rho : D -> E, sigma : coker -> D
  std::vector<std::vector<std::size_t>> kept;
};

SplitCokernel split_cokernel(const FreeChainComplex& E, const FreeChainComplex& D, const std::vector<RMatrix>& F);

/// True iff the identities of the certificate hold exactly for E -> D -> C.
bool verify_certificate(const FreeChainComplex& E, const FreeChainComplex& D, const FreeChainComplex& C,
                        const Certificate& cert);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j, const FreeChainComplex& E, const FreeChainComplex& D,
                                  const FreeChainComplex& C);

// --- module level ----------------------------------------------------------------

/// Cokernel of relations : C^r -> C^g. When the relations split off with unit
/// pivots the module is free, with basis given by the kept generators.
struct ModulePresentation {
  RingPtr ring;
  std::size_t generators = 0;
  RMatrix relations;
  std::optional<std::size_t> free_rank;
  RMatrix projection;  // generators -> free basis, kills relations
  RMatrix section;     // free basis -> generators
  nlohmann::json to_json() const;
};

ModulePresentation present_module(const RingPtr& ring, std::size_t generators, const RMatrix& relations);

/// Assembly of a module over the 2 x 2 ring: coker(C (x) B (x) M2 -> C (x) M1 + C (x) M2).
ModulePresentation assemble_module(const TriangularRing& A, const LocalizationData& L, const TriModule& M);

/// Explicit isomorphism of two free presentations of equal rank: f on generators
/// of P to generators of Q and g back, both checked modulo relations.
struct ModuleIsomorphism {
  RMatrix f, g;
};
std::optional<ModuleIsomorphism> module_isomorphism(const ModulePresentation& P, const ModulePresentation& Q);

// --- chain level -------------------------------------------------------------------

/// Component complexes with structure maps. HNN: D = {D}, maps = {i_alpha, i_beta}
/// both into D. Amalgam: D = {D1, D2}, maps = {i_1 into D1, i_2 into D2}.
/// Map matrices have entries in the ring of their target complex.
struct AssemblyInput {
  TriPtr ring;
  LocalizationData localization;
  FreeChainComplex E;
  std::vector<FreeChainComplex> D;
  std::vector<std::vector<RMatrix>> maps;
  ValidationReport validate() const;
};

struct AssemblyResult {
  FreeChainComplex complex;
  FreeChainComplex E, D;  // induced up to the generalized free product ring
  std::vector<RMatrix> map;
  Certificate cert;
  std::vector<std::vector<std::size_t>> kept;
  ValidationReport report;
  nlohmann::json to_json() const;
};

AssemblyResult assemble_hnn(const AssemblyInput& in);
AssemblyResult assemble_amalgam(const AssemblyInput& in);
AssemblyResult assemble(const AssemblyInput& in);

// --- Mayer-Vietoris presentations ------------------------------------------------

/// 0 -> L (x) E -> L (x) D -> C -> 0 with L = R[z, z^-1]. E and D are over R;
/// iso maps the cokernel basis onto C, iso_inverse back.
struct MVPresentation {
  FreeChainComplex E, D;
  FreeChainComplex E_up, D_up, coker;
  std::vector<RMatrix> map;
  std::vector<RMatrix> iso, iso_inverse;
  Certificate cert;
  std::vector<std::pair<long, long>> windows;  // [lo, hi] per degree, empty for general presentations
  nlohmann::json to_json() const;
  static MVPresentation from_json(const nlohmann::json& j);
};

MVPresentation mv_construct_laurent(const FreeChainComplex& C);
bool mv_verify(const MVPresentation& p, const FreeChainComplex& C);

/// Wraps a geometric assembly as a presentation of its own output.
MVPresentation mv_from_assembly(const AssemblyResult& a);

}  // namespace cohn
