#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cohn/error.hpp"

namespace cohn {

/// One syllable gen^exp of a word; exp is never zero in a normalized word.
struct Letter {
  int gen = 0;
  long exp = 1;
  bool operator==(const Letter&) const = default;
};

using Letters = std::vector<Letter>;

/// Canonical total order on letter sequences (shortlex, positive powers first).
bool shortlex_less(const Letters& a, const Letters& b);
/// Total length sum |exp|.
long word_length(const Letters& w);
/// Appends with eager collapse of equal adjacent generators.
void append_merge(Letters& out, const Letter& l);
void append_merge(Letters& out, const Letters& tail);
Letters formal_inverse(const Letters& w);

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class SubgroupCoset;

struct ValidationReport {
  std::vector<std::string> verified;
  std::vector<std::string> trusted;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void merge(const ValidationReport& o);
};

/// Edge homomorphism data: a group S and the images of its generators in a
/// target group, together with an optional user-chosen right transversal.
struct EdgeData {
  GroupPtr edge_group;
  std::vector<Letters> images;                       // per edge generator, in target normal form
  std::optional<std::vector<Letters>> transversal;   // explicit right-coset representatives
};

/// Outcome of splitting g = image(s) * t with t the chosen coset representative.
struct CosetSplit {
  Letters s;  // element of the edge group, normal form
  Letters t;  // transversal representative in the target, normal form
};

enum class EdgeClass { Trivial, Finite, BasisSubset, CyclicFree, Lattice };
std::string to_string(EdgeClass c);

/// A finitely described group with a decidable word problem.
///
/// Instances are immutable and shared; all operations are pure.
class Group : public std::enable_shared_from_this<Group> {
 public:
  struct Free {
    std::vector<std::string> labels;
  };
  struct FreeAbelian {
    std::vector<std::string> labels;
  };
  struct Finite {
    std::vector<std::string> elements;       // index 0 must be the identity
    std::vector<std::vector<int>> table;     // table[a][b] = index of a*b
    std::vector<int> inverses;
  };
  struct Hnn {
    GroupPtr base;
    EdgeData alpha;  // S -> base
    EdgeData beta;   // S -> base
    std::string stable;
  };
  struct Amalgam {
    GroupPtr left;
    GroupPtr right;
    EdgeData to_left;   // S -> left
    EdgeData to_right;  // S -> right
  };
  using Variant = std::variant<Free, FreeAbelian, Finite, Hnn, Amalgam>;

  static GroupPtr free(std::vector<std::string> labels);
  static GroupPtr free_abelian(std::vector<std::string> labels);
  static GroupPtr finite(std::vector<std::string> elements, std::vector<std::vector<int>> table);
  static GroupPtr hnn(GroupPtr base, EdgeData alpha, EdgeData beta, std::string stable);
  static GroupPtr amalgam(GroupPtr left, GroupPtr right, EdgeData to_left, EdgeData to_right);
  static GroupPtr trivial() { return free({}); }

  const Variant& variant() const { return v_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&v_); }

  std::size_t generator_count() const { return labels_.size(); }
  const std::string& label(int gen) const { return labels_.at(static_cast<std::size_t>(gen)); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(const std::string& label) const;

  bool is_trivial_group() const;
  /// Z = <z>: HNN of the trivial group, free of rank 1, or free abelian of rank 1.
  bool is_infinite_cyclic() const;
  int depth() const { return depth_; }

  Letters normalize(const Letters& w) const;
  Letters multiply(const Letters& a, const Letters& b) const;
  Letters inverse(const Letters& a) const;
  bool is_identity(const Letters& w) const { return normalize(w).empty(); }

  /// Relators whose normal closure presents the group (used for morphism checks).
  std::vector<Letters> defining_relators() const;

  /// Stable identifier covering structure, labels and chosen transversals.
  const std::string& fingerprint() const { return fingerprint_; }
  const nlohmann::json& descriptor_json() const { return json_; }

  bool same_as(const Group& o) const { return this == &o || fingerprint_ == o.fingerprint_; }

  /// Validation of the edge data this group was built from.
  const ValidationReport& report() const { return report_; }

  // Access to coset machinery of HNN/amalgam descriptors (index 0 = alpha/left).
  const SubgroupCoset& coset(int which) const { return *cosets_.at(static_cast<std::size_t>(which)); }

 private:
  explicit Group(Variant v);
  void finish();

  Letters normalize_free(const Letters& w) const;
  Letters normalize_abelian(const Letters& w) const;
  Letters normalize_finite(const Letters& w) const;
  Letters normalize_hnn(const Letters& w) const;
  Letters normalize_amalgam(const Letters& w) const;

  Variant v_;
  std::vector<std::string> labels_;
  std::vector<std::shared_ptr<const SubgroupCoset>> cosets_;
  ValidationReport report_;
  nlohmann::json json_;
  std::string fingerprint_;
  int depth_ = 0;
};

/// Decides membership in an edge image subgroup H = image(S) <= target and
/// splits any target element along the right cosets Hg.
class SubgroupCoset {
 public:
  virtual ~SubgroupCoset() = default;

  EdgeClass edge_class() const { return cls_; }
  const Group& target() const { return *target_; }
  const Group& edge() const { return *edge_; }

  /// image of an edge-group element, in target normal form
  Letters image(const Letters& s) const;
  CosetSplit split(const Letters& g) const;
  bool contains(const Letters& g) const { return split(g).t.empty(); }

  /// Number of cosets when finite.
  std::optional<long> index() const { return index_; }

  const ValidationReport& report() const { return report_; }

  static std::shared_ptr<const SubgroupCoset> make(const EdgeData& e, GroupPtr target);

 protected:
  SubgroupCoset(EdgeClass cls, GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : cls_(cls), edge_(std::move(edge)), target_(std::move(target)), images_(std::move(images)) {}

  virtual CosetSplit canonical_split(const Letters& g) const = 0;

  EdgeClass cls_;
  GroupPtr edge_;
  GroupPtr target_;
  std::vector<Letters> images_;
  std::optional<long> index_;
  ValidationReport report_;

 private:
  struct UserRep {
    Letters canonical;
    Letters rep;
    Letters correction;  // rep = image(correction) * canonical
  };
  std::vector<UserRep> user_reps_;
  void install_transversal(const std::vector<Letters>& reps);
};

/// Validates an edge homomorphism into a target without building a group.
ValidationReport validate_edge(const EdgeData& e, const GroupPtr& target);

/// A word together with the group it lives in.
class Word {
 public:
  Word() = default;
  Word(GroupPtr owner, Letters letters) : owner_(std::move(owner)), letters_(std::move(letters)) {}

  static Word parse(GroupPtr owner, const std::string& text);
  static Word identity(GroupPtr owner) { return Word(std::move(owner), {}); }

  const GroupPtr& owner() const { return owner_; }
  const Letters& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::string to_string() const;

  bool operator==(const Word& o) const { return letters_ == o.letters_ && owner_->same_as(*o.owner_); }

 private:
  GroupPtr owner_;
  Letters letters_;
};

std::string format_letters(const Group& g, const Letters& w);
Letters parse_letters(const Group& g, const std::string& text);

Word normal_form(const Word& w);
Word multiply(const Word& a, const Word& b);
Word inverse(const Word& a);
bool is_trivial(const Word& w);

GroupPtr group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const Group& g);

}  // namespace cohn
