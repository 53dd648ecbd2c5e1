#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohn/chains.hpp"
#include "cohn/groupring.hpp"

namespace cohn {

enum class TriKind { Hnn, Amalgam };

/// Element of a triangular matrix ring.
///   HNN (2x2):     diag = {a1 in R, a2 in S},  corner = {x, y} for (x, y) in R_alpha + R_beta
///   amalgam (3x3): diag = {r1, r2, s},         corner = {b1 in R1 at (1,3), b2 in R2 at (2,3)}
struct TriElement {
  std::vector<RingElement> diag;
  std::vector<RingElement> corner;
  bool operator==(const TriElement& o) const { return diag == o.diag && corner == o.corner; }
};

/// Nonsingular symmetric form on the corner bimodule B = A1^n: an invertible
/// n x n matrix beta over A1 with adjoint(beta) = beta.
struct FormData {
  RMatrix beta;
  RMatrix beta_inv;
};

class TriangularRing;
using TriPtr = std::shared_ptr<const TriangularRing>;

class TriangularRing {
 public:
  static TriPtr hnn(const RingMorphism& alpha, const RingMorphism& beta, std::optional<FormData> form = std::nullopt);
  static TriPtr amalgam(const RingMorphism& i1, const RingMorphism& i2);

  TriKind kind() const { return kind_; }
  std::size_t size() const { return kind_ == TriKind::Hnn ? 2 : 3; }
  const std::vector<RingPtr>& diagonal() const { return diag_; }
  const std::vector<RingMorphism>& corner_maps() const { return maps_; }  // alpha, beta or i1, i2

  /// Ring C with Sigma^-1 A = M_k(C) and the inclusions of the diagonal rings into C.
  const RingPtr& target() const { return target_; }
  const RingMorphism& embedding(std::size_t i) const { return embed_.at(i); }

  TriElement zero() const;
  TriElement one() const;
  TriElement idempotent(std::size_t i) const;
  TriElement add(const TriElement& a, const TriElement& b) const;
  TriElement mul(const TriElement& a, const TriElement& b) const;
  /// e_i a e_j
  TriElement project(std::size_t i, std::size_t j, const TriElement& a) const;

  /// rank of the corner bimodule B over A1 (HNN only): 2
  std::size_t corner_rank() const { return 2; }
  /// right action of s in A2 on B = A1^n as an n x n matrix over A1 (HNN only)
  RMatrix right_action(const RingElement& s) const;

  const std::optional<FormData>& form() const { return form_; }
  ValidationReport report() const { return report_; }

  nlohmann::json to_json() const;

 private:
  TriangularRing() = default;
  void check_element(const TriElement& a) const;

  TriKind kind_ = TriKind::Hnn;
  std::vector<RingPtr> diag_;
  std::vector<RingMorphism> maps_;
  RingPtr target_;
  std::vector<RingMorphism> embed_;
  std::optional<FormData> form_;
  ValidationReport report_;
};

/// Description of Hom_A(P_i, P_j) = e_i A e_j. Column indices start at 1.
struct ModuleDescription {
  std::string name;   // e.g. "R", "R_alpha + R_beta", "0"
  bool zero = false;
  std::size_t i = 0, j = 0;
};
ModuleDescription hom_columns(const TriangularRing& A, std::size_t i, std::size_t j);

/// Entry maps A -> M_k(C).
RMatrix lambda(const TriangularRing& A, const TriElement& a);

struct LocalizationData {
  RingPtr target;
  std::vector<TriElement> sigma;
  std::vector<RingElement> sigma_images;       // lambda of each sigma, as an element of C
  std::vector<RingElement> certified_inverses;
  ValidationReport report;
  nlohmann::json to_json() const;
};

/// Builds C, the Sigma-set and certified inverses; checks the inverses and the
/// symbolic corner relation.
LocalizationData localize(const TriangularRing& A);

/// Checks lambda(a b) = lambda(a) lambda(b) on the given pairs.
/// Reads the format written by TriangularRing::to_json (the target is rebuilt).
TriPtr triangular_from_json(const nlohmann::json& j);

ValidationReport check_entry_maps(const TriangularRing& A, const std::vector<std::pair<TriElement, TriElement>>& pairs);

// --- modules and chain duality over the 2x2 HNN ring ---------------------------

RMatrix adjoint(const RMatrix& m);

/// A-module with free components M1 = A1^m1, M2 = A2^m2 and structure map
/// mu : B (x) M2 = A1^(n m2) -> M1. A cokernel presentation may be attached;
/// free modules carry none.
struct TriModule {
  std::size_t m1 = 0, m2 = 0;
  RMatrix mu;
  std::optional<RMatrix> relations1, relations2;
};

struct TriMap {
  RMatrix f1, f2;
};

/// Chain complex of TriModules in degrees 0..top; d[r] : degree r -> r-1 (d[0] unused).
struct TriComplex {
  std::vector<TriModule> mods;
  std::vector<TriMap> d;
  int top() const { return static_cast<int>(mods.size()) - 1; }
};

TriModule column_module(const TriangularRing& A, std::size_t i);  // P1 or P2
TriModule direct_sum(const TriangularRing& A, const TriModule& a, const TriModule& b);

/// B (x) F2 for a matrix F2 over A2.
RMatrix tensor_corner(const TriangularRing& A, const RMatrix& f2);
/// mu_M f1 = (1 (x) f2) mu_N
bool is_module_map(const TriangularRing& A, const TriModule& M, const TriModule& N, const TriMap& f);
ValidationReport validate_trimodule(const TriangularRing& A, const TriModule& M);

/// TM : (M1*, 0) -> (B (x) M2*, M2*)
TriComplex chain_dual(const TriangularRing& A, const TriModule& M);
/// T of a 1-dimensional complex whose degree-1 module has no second component.
TriComplex chain_dual(const TriangularRing& A, const TriComplex& C);

/// Chain equivalence TT(M) ~ M (M in degree 0): f : TT(M) -> M, g : M -> TT(M),
/// with g f = 1 and 1 - f g = d h + h d.
struct DualityEquivalence {
  TriComplex tt;
  TriMap f0, g0;
  RMatrix h0;  // TT_0 -> TT_1 on the first component
};

/// x is a right inverse of mu (mu x = 1), as exists for sums of column modules.
DualityEquivalence double_dual_equivalence(const TriangularRing& A, const TriModule& M, const RMatrix& x);
std::vector<std::string> verify_equivalence(const TriangularRing& A, const TriModule& M, const DualityEquivalence& e);

}  // namespace cohn
