#include "cohn/groups.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace cohn {

// ---------------------------------------------------------------------------
// letter utilities

namespace {

// Key used for shortlex: generator, then |exp|, then positive before negative.
auto letter_key(const Letter& l) { return std::make_tuple(l.gen, std::labs(l.exp), l.exp < 0); }

Letters shift(const Letters& w, int offset) {
  Letters out = w;
  for (auto& l : out) l.gen += offset;
  return out;
}

Letters unshift(const Letters& w, int offset) { return shift(w, -offset); }

Letters power(const Letters& w, long k) {
  Letters out;
  if (k == 0) return out;
  Letters base = k > 0 ? w : formal_inverse(w);
  for (long i = 0; i < std::labs(k); ++i) append_merge(out, base);
  return out;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

bool shortlex_less(const Letters& a, const Letters& b) {
  long la = word_length(a), lb = word_length(b);
  if (la != lb) return la < lb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Letter& x, const Letter& y) { return letter_key(x) < letter_key(y); });
}

long word_length(const Letters& w) {
  long n = 0;
  for (const auto& l : w) n += std::labs(l.exp);
  return n;
}

void append_merge(Letters& out, const Letter& l) {
  if (l.exp == 0) return;
  if (!out.empty() && out.back().gen == l.gen) {
    out.back().exp += l.exp;
    if (out.back().exp == 0) out.pop_back();
  } else {
    out.push_back(l);
  }
}

void append_merge(Letters& out, const Letters& tail) {
  for (const auto& l : tail) append_merge(out, l);
}

Letters formal_inverse(const Letters& w) {
  Letters out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

void ValidationReport::merge(const ValidationReport& o) {
  verified.insert(verified.end(), o.verified.begin(), o.verified.end());
  trusted.insert(trusted.end(), o.trusted.begin(), o.trusted.end());
  failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

std::string to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Trivial: return "trivial";
    case EdgeClass::Finite: return "finite";
    case EdgeClass::BasisSubset: return "basis_subset";
    case EdgeClass::CyclicFree: return "cyclic_free";
    case EdgeClass::Lattice: return "lattice";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// subgroup coset classes

namespace {

class TrivialCoset final : public SubgroupCoset {
 public:
  TrivialCoset(GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : SubgroupCoset(EdgeClass::Trivial, std::move(edge), std::move(target), std::move(images)) {
    report_.verified.push_back("edge group is trivial: map well-defined and injective");
  }

 protected:
  CosetSplit canonical_split(const Letters& g) const override { return {{}, g}; }
};

class FiniteCoset final : public SubgroupCoset {
 public:
  FiniteCoset(GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : SubgroupCoset(EdgeClass::Finite, std::move(edge), std::move(target), std::move(images)) {
    const auto& e = *edge_->as<Group::Finite>();
    const auto& t = *target_->as<Group::Finite>();
    std::size_t n = e.elements.size();
    map_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Letters im = images_.at(i);
      map_[i] = im.empty() ? 0 : im.front().gen;
    }
    bool hom = true;
    for (std::size_t a = 0; a < n && hom; ++a)
      for (std::size_t b = 0; b < n && hom; ++b)
        if (map_[static_cast<std::size_t>(e.table[a][b])] != t.table[static_cast<std::size_t>(map_[a])][static_cast<std::size_t>(map_[b])])
          hom = false;
    if (!hom) {
      report_.failures.push_back("edge map is not a homomorphism (exhaustive table check)");
      return;
    }
    report_.verified.push_back("edge map is a homomorphism (exhaustive table check)");
    std::set<int> image(map_.begin(), map_.end());
    if (image.size() != n) {
      report_.failures.push_back("edge map is not injective (exhaustive)");
      return;
    }
    report_.verified.push_back("edge map is injective (exhaustive)");
    preimage_.assign(t.elements.size(), -1);
    for (std::size_t i = 0; i < n; ++i) preimage_[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    // canonical representative: least element index in each right coset Hg
    std::size_t m = t.elements.size();
    rep_.assign(m, -1);
    for (std::size_t g = 0; g < m; ++g) {
      int best = static_cast<int>(g);
      for (int h : image) best = std::min(best, t.table[static_cast<std::size_t>(h)][g]);
      rep_[g] = best;
    }
    index_ = static_cast<long>(m / n);
    report_.verified.push_back("transversal complete: " + std::to_string(*index_) + " right cosets enumerated");
  }

 protected:
  CosetSplit canonical_split(const Letters& g) const override {
    const auto& t = *target_->as<Group::Finite>();
    int x = g.empty() ? 0 : g.front().gen;
    int r = rep_[static_cast<std::size_t>(x)];
    int h = t.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(t.inverses[static_cast<std::size_t>(r)])];
    int s = preimage_[static_cast<std::size_t>(h)];
    CosetSplit out;
    if (s != 0) out.s = {{s, 1}};
    if (r != 0) out.t = {{r, 1}};
    return out;
  }

 private:
  std::vector<int> map_, preimage_, rep_;
};

class BasisSubsetCoset final : public SubgroupCoset {
 public:
  BasisSubsetCoset(GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : SubgroupCoset(EdgeClass::BasisSubset, std::move(edge), std::move(target), std::move(images)) {
    for (std::size_t i = 0; i < images_.size(); ++i) to_edge_[images_[i].front().gen] = static_cast<int>(i);
    report_.verified.push_back("free edge group: relations preserved vacuously");
    report_.verified.push_back("injective: basis mapped onto a subset of a free basis");
    report_.verified.push_back("transversal rule: strip the maximal prefix in the basis subset");
  }

 protected:
  CosetSplit canonical_split(const Letters& g) const override {
    CosetSplit out;
    std::size_t i = 0;
    for (; i < g.size(); ++i) {
      auto it = to_edge_.find(g[i].gen);
      if (it == to_edge_.end()) break;
      out.s.push_back({it->second, g[i].exp});
    }
    out.t.assign(g.begin() + static_cast<long>(i), g.end());
    return out;
  }

 private:
  std::map<int, int> to_edge_;
};

class CyclicFreeCoset final : public SubgroupCoset {
 public:
  CyclicFreeCoset(GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : SubgroupCoset(EdgeClass::CyclicFree, std::move(edge), std::move(target), std::move(images)) {
    report_.verified.push_back("free edge group: relations preserved vacuously");
    report_.verified.push_back("injective: nontrivial elements of a free group have infinite order");
    report_.verified.push_back("transversal rule: shortlex-least element of each coset");
  }

 protected:
  CosetSplit canonical_split(const Letters& g) const override {
    const Letters& c = images_.front();
    long bound = word_length(g) / word_length(c) + 2;
    Letters best = g;
    long best_k = 0;
    for (long k = -bound; k <= bound; ++k) {
      Letters w = target_->multiply(power(c, k), g);
      if (shortlex_less(w, best)) {
        best = std::move(w);
        best_k = k;
      }
    }
    CosetSplit out;
    if (best_k != 0) out.s = {{0, -best_k}};
    out.t = std::move(best);
    return out;
  }
};

using IntRow = std::vector<long long>;

// Row-style Hermite normal form H = U * M with U unimodular.
struct Hermite {
  std::vector<IntRow> h, u;
  std::vector<int> pivot_col;  // per nonzero row
};

Hermite hermite(const std::vector<IntRow>& m, std::size_t cols) {
  std::size_t rows = m.size();
  Hermite out;
  out.h = m;
  out.u.assign(rows, IntRow(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) out.u[i][i] = 1;
  auto& h = out.h;
  auto& u = out.u;
  auto row_op = [&](std::size_t dst, std::size_t src, long long q) {
    for (std::size_t j = 0; j < cols; ++j) h[dst][j] -= q * h[src][j];
    for (std::size_t j = 0; j < rows; ++j) u[dst][j] -= q * u[src][j];
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t piv = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h[i][c] != 0 && (piv == rows || std::llabs(h[i][c]) < std::llabs(h[piv][c]))) piv = i;
      if (piv == rows) break;
      std::swap(h[piv], h[r]);
      std::swap(u[piv], u[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h[i][c] == 0) continue;
        row_op(i, r, h[i][c] / h[r][c]);
        if (h[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][c] == 0) continue;
    if (h[r][c] < 0) {
      for (auto& x : h[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      long long q = h[i][c] / h[r][c];
      if (h[i][c] - q * h[r][c] < 0) --q;
      if (q != 0) row_op(i, r, q);
    }
    out.pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  return out;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

class LatticeCoset final : public SubgroupCoset {
 public:
  LatticeCoset(GroupPtr edge, GroupPtr target, std::vector<Letters> images)
      : SubgroupCoset(EdgeClass::Lattice, std::move(edge), std::move(target), std::move(images)) {
    n_ = target_->generator_count();
    m_ = edge_->generator_count();
    std::vector<IntRow> rows;
    for (const auto& im : images_) rows.push_back(to_vec(im, n_));
    hnf_ = hermite(rows, n_);
    report_.verified.push_back("abelian edge group into abelian target: relations preserved");
    if (hnf_.pivot_col.size() != m_) {
      report_.failures.push_back("edge map is not injective (image lattice has rank " +
                                 std::to_string(hnf_.pivot_col.size()) + " < " + std::to_string(m_) + ")");
      return;
    }
    report_.verified.push_back("injective: image lattice has full rank " + std::to_string(m_));
    if (m_ == n_) {
      long long idx = 1;
      for (std::size_t i = 0; i < m_; ++i) idx *= hnf_.h[i][static_cast<std::size_t>(hnf_.pivot_col[i])];
      index_ = static_cast<long>(idx);
    }
    report_.verified.push_back("transversal rule: Hermite normal form reduction");
  }

 protected:
  CosetSplit canonical_split(const Letters& g) const override {
    IntRow v = to_vec(g, n_);
    IntRow q(m_, 0);
    for (std::size_t i = 0; i < hnf_.pivot_col.size(); ++i) {
      auto c = static_cast<std::size_t>(hnf_.pivot_col[i]);
      long long k = floor_div(v[c], hnf_.h[i][c]);
      if (k == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] -= k * hnf_.h[i][j];
      q[i] += k;
    }
    // s = q * U
    IntRow s(m_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) s[j] += q[i] * hnf_.u[i][j];
    CosetSplit out;
    out.s = edge_->normalize(from_vec(s));
    out.t = target_->normalize(from_vec(v));
    return out;
  }

 private:
  static IntRow to_vec(const Letters& w, std::size_t n) {
    IntRow v(n, 0);
    for (const auto& l : w) v[static_cast<std::size_t>(l.gen)] += l.exp;
    return v;
  }
  static Letters from_vec(const IntRow& v) {
    Letters w;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) w.push_back({static_cast<int>(i), static_cast<long>(v[i])});
    return w;
  }

  std::size_t n_ = 0, m_ = 0;
  Hermite hnf_;
};

bool is_abelian_cyclic_like(const Group& g) {
  if (g.as<Group::FreeAbelian>()) return true;
  if (const auto* f = g.as<Group::Free>()) return f->labels.size() == 1;
  return false;
}

}  // namespace

Letters SubgroupCoset::image(const Letters& s) const {
  Letters w;
  for (const auto& l : s) append_merge(w, power(images_.at(static_cast<std::size_t>(l.gen)), l.exp));
  return target_->normalize(w);
}

CosetSplit SubgroupCoset::split(const Letters& g) const {
  CosetSplit c = canonical_split(g);
  if (user_reps_.empty()) return c;
  for (const auto& u : user_reps_)
    if (u.canonical == c.t) return {edge_->multiply(c.s, edge_->inverse(u.correction)), u.rep};
  throw Error(ErrorKind::UnsupportedEdgeClass, "transversal misses a coset");
}

void SubgroupCoset::install_transversal(const std::vector<Letters>& reps) {
  if (!index_) {
    report_.failures.push_back("explicit transversal given for an infinite-index subgroup");
    return;
  }
  std::vector<UserRep> out;
  bool has_identity = false;
  for (const auto& r : reps) {
    Letters nr = target_->normalize(r);
    if (nr.empty()) has_identity = true;
    CosetSplit c = canonical_split(nr);
    for (const auto& o : out)
      if (o.canonical == c.t) {
        report_.failures.push_back("transversal has two representatives of one coset");
        return;
      }
    out.push_back({c.t, nr, c.s});
  }
  if (!has_identity) {
    report_.failures.push_back("transversal does not contain the identity");
    return;
  }
  if (static_cast<long>(out.size()) != *index_) {
    report_.failures.push_back("transversal has " + std::to_string(out.size()) + " representatives, index is " +
                               std::to_string(*index_));
    return;
  }
  user_reps_ = std::move(out);
  report_.verified.push_back("explicit transversal complete and consistent (" + std::to_string(*index_) +
                             " cosets)");
}

std::shared_ptr<const SubgroupCoset> SubgroupCoset::make(const EdgeData& e, GroupPtr target) {
  if (!e.edge_group) throw Error(ErrorKind::InvalidGroup, "edge data without edge group");
  const Group& s = *e.edge_group;
  if (e.images.size() != s.generator_count())
    throw Error(ErrorKind::InvalidGroup, "edge map gives " + std::to_string(e.images.size()) + " images for " +
                                             std::to_string(s.generator_count()) + " generators");
  std::vector<Letters> images;
  for (const auto& im : e.images) images.push_back(target->normalize(im));

  std::shared_ptr<SubgroupCoset> c;
  if (s.is_trivial_group()) {
    c = std::make_shared<TrivialCoset>(e.edge_group, target, images);
  } else if (target->as<Group::Finite>()) {
    if (!s.as<Group::Finite>())
      throw Error(ErrorKind::UnsupportedEdgeClass, "infinite edge group into a finite group");
    c = std::make_shared<FiniteCoset>(e.edge_group, target, images);
  } else if (is_abelian_cyclic_like(*target)) {
    if (!is_abelian_cyclic_like(s))
      throw Error(ErrorKind::UnsupportedEdgeClass, "edge group into an abelian target must be free abelian");
    c = std::make_shared<LatticeCoset>(e.edge_group, target, images);
  } else if (target->as<Group::Free>()) {
    if (!s.as<Group::Free>())
      throw Error(ErrorKind::UnsupportedEdgeClass, "edge group into a free group must be free");
    std::set<int> seen;
    bool basis = true;
    for (const auto& im : images) {
      if (im.size() != 1 || im.front().exp != 1 || !seen.insert(im.front().gen).second) basis = false;
    }
    if (basis) {
      c = std::make_shared<BasisSubsetCoset>(e.edge_group, target, images);
    } else if (s.generator_count() == 1) {
      const Letters& w = images.front();
      bool cyclic = !w.empty() && (w.size() == 1 || w.front().gen != w.back().gen);
      if (!cyclic)
        throw Error(ErrorKind::UnsupportedEdgeClass, "cyclic edge image must be cyclically reduced and nontrivial");
      c = std::make_shared<CyclicFreeCoset>(e.edge_group, target, images);
    } else {
      throw Error(ErrorKind::UnsupportedEdgeClass,
                  "free edge group must map onto a basis subset or be cyclic");
    }
  } else {
    throw Error(ErrorKind::UnsupportedEdgeClass, "nontrivial edge group into a composite group");
  }
  if (e.transversal && c->report_.ok()) c->install_transversal(*e.transversal);
  return c;
}

ValidationReport validate_edge(const EdgeData& e, const GroupPtr& target) {
  try {
    return SubgroupCoset::make(e, target)->report();
  } catch (const Error& err) {
    ValidationReport r;
    r.failures.push_back(err.what());
    return r;
  }
}

// ---------------------------------------------------------------------------
// groups

Group::Group(Variant v) : v_(std::move(v)) {}

namespace {

void check_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty() || l.find_first_of(" ^\t\n") != std::string::npos)
      throw Error(ErrorKind::InvalidGroup, "bad generator label '" + l + "'");
    if (!seen.insert(l).second) throw Error(ErrorKind::InvalidGroup, "duplicate generator label '" + l + "'");
  }
}

}  // namespace

GroupPtr Group::free(std::vector<std::string> labels) {
  check_labels(labels);
  auto g = std::shared_ptr<Group>(new Group(Free{std::move(labels)}));
  g->finish();
  return g;
}

GroupPtr Group::free_abelian(std::vector<std::string> labels) {
  check_labels(labels);
  auto g = std::shared_ptr<Group>(new Group(FreeAbelian{std::move(labels)}));
  g->finish();
  return g;
}

GroupPtr Group::finite(std::vector<std::string> elements, std::vector<std::vector<int>> table) {
  check_labels(elements);
  std::size_t n = elements.size();
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "finite group needs at least one element");
  if (table.size() != n) throw Error(ErrorKind::InvalidGroup, "multiplication table has wrong size");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::InvalidGroup, "multiplication table has wrong size");
    for (int x : row)
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw Error(ErrorKind::InvalidGroup, "table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != static_cast<int>(a) || table[a][0] != static_cast<int>(a))
      throw Error(ErrorKind::InvalidGroup, "element 0 is not the identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[static_cast<std::size_t>(table[a][b])][c] != table[a][static_cast<std::size_t>(table[b][c])])
          throw Error(ErrorKind::InvalidGroup, "multiplication table is not associative");
  std::vector<int> inv(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) inv[a] = static_cast<int>(b);
    if (inv[a] < 0) throw Error(ErrorKind::InvalidGroup, "element '" + elements[a] + "' has no inverse");
  }
  auto g = std::shared_ptr<Group>(new Group(Finite{std::move(elements), std::move(table), std::move(inv)}));
  g->finish();
  return g;
}

GroupPtr Group::hnn(GroupPtr base, EdgeData alpha, EdgeData beta, std::string stable) {
  if (!alpha.edge_group || !beta.edge_group || !alpha.edge_group->same_as(*beta.edge_group))
    throw Error(ErrorKind::InvalidGroup, "alpha and beta must share the edge group");
  auto g = std::shared_ptr<Group>(new Group(Hnn{std::move(base), std::move(alpha), std::move(beta), std::move(stable)}));
  g->finish();
  return g;
}

GroupPtr Group::amalgam(GroupPtr left, GroupPtr right, EdgeData to_left, EdgeData to_right) {
  if (!to_left.edge_group || !to_right.edge_group || !to_left.edge_group->same_as(*to_right.edge_group))
    throw Error(ErrorKind::InvalidGroup, "both edge maps must share the edge group");
  auto g = std::shared_ptr<Group>(
      new Group(Amalgam{std::move(left), std::move(right), std::move(to_left), std::move(to_right)}));
  g->finish();
  return g;
}

void Group::finish() {
  std::visit(
      [this](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Free> || std::is_same_v<T, FreeAbelian>) {
          labels_ = v.labels;
        } else if constexpr (std::is_same_v<T, Finite>) {
          labels_ = v.elements;
        } else if constexpr (std::is_same_v<T, Hnn>) {
          labels_ = v.base->labels();
          labels_.push_back(v.stable);
          depth_ = 1 + std::max(v.base->depth(), v.alpha.edge_group->depth());
          cosets_.push_back(SubgroupCoset::make(v.alpha, v.base));
          cosets_.push_back(SubgroupCoset::make(v.beta, v.base));
          v.alpha.images = {};
          v.beta.images = {};
          for (int i = 0; i < 2; ++i) {
            EdgeData& e = i == 0 ? v.alpha : v.beta;
            for (std::size_t k = 0; k < e.edge_group->generator_count(); ++k)
              e.images.push_back(cosets_[static_cast<std::size_t>(i)]->image({{static_cast<int>(k), 1}}));
          }
          report_.merge(v.base->report());
          report_.merge(cosets_[0]->report());
          report_.merge(cosets_[1]->report());
        } else {
          labels_ = v.left->labels();
          for (const auto& l : v.right->labels()) labels_.push_back(l);
          depth_ = 1 + std::max({v.left->depth(), v.right->depth(), v.to_left.edge_group->depth()});
          cosets_.push_back(SubgroupCoset::make(v.to_left, v.left));
          cosets_.push_back(SubgroupCoset::make(v.to_right, v.right));
          for (int i = 0; i < 2; ++i) {
            EdgeData& e = i == 0 ? v.to_left : v.to_right;
            e.images.clear();
            for (std::size_t k = 0; k < e.edge_group->generator_count(); ++k)
              e.images.push_back(cosets_[static_cast<std::size_t>(i)]->image({{static_cast<int>(k), 1}}));
          }
          report_.merge(v.left->report());
          report_.merge(v.right->report());
          report_.merge(cosets_[0]->report());
          report_.merge(cosets_[1]->report());
        }
      },
      v_);
  check_labels(labels_);
  if (depth_ > 2) throw Error(ErrorKind::InvalidGroup, "descriptors may nest to depth 2 only");
  if (!report_.ok()) throw Error(ErrorKind::InvalidGroup, "edge validation failed: " + report_.failures.front());
  json_ = group_to_json(*this);
  fingerprint_ = hex64(fnv1a(json_.dump()));
}

std::optional<int> Group::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

bool Group::is_trivial_group() const {
  if (const auto* f = as<Free>()) return f->labels.empty();
  if (const auto* a = as<FreeAbelian>()) return a->labels.empty();
  if (const auto* fin = as<Finite>()) return fin->elements.size() == 1;
  return false;
}

bool Group::is_infinite_cyclic() const {
  if (const auto* f = as<Free>()) return f->labels.size() == 1;
  if (const auto* a = as<FreeAbelian>()) return a->labels.size() == 1;
  if (const auto* h = as<Hnn>()) return h->base->is_trivial_group();
  return false;
}

Letters Group::normalize(const Letters& w) const {
  for (const auto& l : w)
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= labels_.size())
      throw Error(ErrorKind::UnknownGenerator, "generator index " + std::to_string(l.gen));
  switch (v_.index()) {
    case 0: return normalize_free(w);
    case 1: return normalize_abelian(w);
    case 2: return normalize_finite(w);
    case 3: return normalize_hnn(w);
    default: return normalize_amalgam(w);
  }
}

Letters Group::multiply(const Letters& a, const Letters& b) const {
  Letters w = a;
  w.insert(w.end(), b.begin(), b.end());
  return normalize(w);
}

Letters Group::inverse(const Letters& a) const { return normalize(formal_inverse(a)); }

Letters Group::normalize_free(const Letters& w) const {
  Letters out;
  append_merge(out, w);
  return out;
}

Letters Group::normalize_abelian(const Letters& w) const {
  std::vector<long> e(labels_.size(), 0);
  for (const auto& l : w) e[static_cast<std::size_t>(l.gen)] += l.exp;
  Letters out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) out.push_back({static_cast<int>(i), e[i]});
  return out;
}

Letters Group::normalize_finite(const Letters& w) const {
  const auto& f = std::get<Finite>(v_);
  auto mul = [&](int a, int b) { return f.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  int cur = 0;
  for (const auto& l : w) {
    int x = l.exp > 0 ? l.gen : f.inverses[static_cast<std::size_t>(l.gen)];
    // x^k with k reduced by the order of x
    long order = 1;
    for (int y = x; y != 0; y = mul(y, x)) ++order;
    long k = std::labs(l.exp) % order;
    for (long i = 0; i < k; ++i) cur = mul(cur, x);
  }
  if (cur == 0) return {};
  return {{cur, 1}};
}

Letters Group::normalize_hnn(const Letters& input) const {
  const Letters w = formal_inverse(input);
  const auto& h = std::get<Hnn>(v_);
  const Group& base = *h.base;
  const int nb = static_cast<int>(base.generator_count());
  const SubgroupCoset& alpha = *cosets_[0];
  const SubgroupCoset& beta = *cosets_[1];

  // g = head * z^e1 t1 * z^e2 t2 ...; built right to left.
  Letters head;
  std::deque<std::pair<int, Letters>> syl;

  auto prepend_stable = [&](int eps) {
    // z g = z beta(s) t = alpha(s) z t ;  z^-1 g = z^-1 alpha(s) t = beta(s) z^-1 t
    const SubgroupCoset& through = eps > 0 ? beta : alpha;
    const SubgroupCoset& other = eps > 0 ? alpha : beta;
    CosetSplit c = through.split(head);
    if (c.t.empty() && !syl.empty() && syl.front().first == -eps) {
      head = base.multiply(other.image(c.s), syl.front().second);
      syl.pop_front();
    } else {
      syl.emplace_front(eps, std::move(c.t));
      head = other.image(c.s);
    }
  };

  std::size_t i = w.size();
  while (i > 0) {
    if (w[i - 1].gen == nb) {
      const long e = w[i - 1].exp;
      for (long k = 0; k < std::labs(e); ++k) prepend_stable(e > 0 ? 1 : -1);
      --i;
      continue;
    }
    std::size_t j = i;
    while (j > 0 && w[j - 1].gen != nb) --j;
    Letters run(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(i));
    head = base.multiply(run, head);
    i = j;
  }

  // The input was inverted, so read the syllables back to front: the result is
  // t_n^-1 z^-e_n ... t_1^-1 z^-e_1 head^-1, base part at the right end.
  Letters out;
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
    append_merge(out, base.inverse(it->second));
    append_merge(out, Letter{nb, -it->first});
  }
  append_merge(out, base.inverse(head));
  return out;
}

Letters Group::normalize_amalgam(const Letters& w) const {
  const auto& a = std::get<Amalgam>(v_);
  const int nl = static_cast<int>(a.left->generator_count());
  const Group* side_group[2] = {a.left.get(), a.right.get()};
  const int offset[2] = {0, nl};

  // g = i(h) * t1 * t2 ... with alternating sides; built right to left.
  Letters h;
  std::deque<std::pair<int, Letters>> syl;

  auto prepend = [&](int side, const Letters& x) {
    const Group& G = *side_group[side];
    const SubgroupCoset& H = *cosets_[static_cast<std::size_t>(side)];
    Letters y = G.multiply(x, H.image(h));
    if (!syl.empty() && syl.front().first == side) {
      y = G.multiply(y, syl.front().second);
      syl.pop_front();
    }
    CosetSplit c = H.split(y);
    h = std::move(c.s);
    if (!c.t.empty()) syl.emplace_front(side, std::move(c.t));
  };

  std::size_t i = w.size();
  while (i > 0) {
    int side = w[i - 1].gen < nl ? 0 : 1;
    std::size_t j = i;
    while (j > 0 && (w[j - 1].gen < nl ? 0 : 1) == side) --j;
    Letters run(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(i));
    prepend(side, unshift(run, offset[side]));
    i = j;
  }

  Letters out = cosets_[0]->image(h);
  for (const auto& [side, t] : syl) append_merge(out, shift(t, offset[side]));
  return out;
}

std::vector<Letters> Group::defining_relators() const {
  std::vector<Letters> rels;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          for (int i = 0; i < static_cast<int>(v.labels.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(v.labels.size()); ++j)
              rels.push_back({{i, 1}, {j, 1}, {i, -1}, {j, -1}});
        } else if constexpr (std::is_same_v<T, Finite>) {
          int n = static_cast<int>(v.elements.size());
          rels.push_back({{0, 1}});
          for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b) {
              int ab = v.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
              Letters r{{a, 1}, {b, 1}};
              if (ab != 0) r.push_back({ab, -1});
              rels.push_back(r);
            }
        } else if constexpr (std::is_same_v<T, Hnn>) {
          rels = v.base->defining_relators();
          int z = static_cast<int>(v.base->generator_count());
          for (std::size_t k = 0; k < v.alpha.images.size(); ++k) {
            Letters r = v.alpha.images[k];
            r.push_back({z, 1});
            for (const auto& l : formal_inverse(v.beta.images[k])) r.push_back(l);
            r.push_back({z, -1});
            rels.push_back(r);
          }
        } else if constexpr (std::is_same_v<T, Amalgam>) {
          rels = v.left->defining_relators();
          int nl = static_cast<int>(v.left->generator_count());
          for (const auto& r : v.right->defining_relators()) rels.push_back(shift(r, nl));
          for (std::size_t k = 0; k < v.to_left.images.size(); ++k) {
            Letters r = v.to_left.images[k];
            for (const auto& l : shift(formal_inverse(v.to_right.images[k]), nl)) r.push_back(l);
            rels.push_back(r);
          }
        }
      },
      v_);
  return rels;
}

// ---------------------------------------------------------------------------
// words

std::string format_letters(const Group& g, const Letters& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += g.label(l.gen);
    if (l.exp != 1) out += '^' + std::to_string(l.exp);
  }
  return out;
}

Letters parse_letters(const Group& g, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Letters w;
  while (in >> tok) {
    if (tok == "1") continue;
    std::string label = tok;
    long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      label = tok.substr(0, caret);
      try {
        std::size_t used = 0;
        exp = std::stol(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "bad exponent in '" + tok + "'");
      }
    }
    auto gen = g.find(label);
    if (!gen) throw Error(ErrorKind::UnknownGenerator, "'" + label + "'");
    if (exp != 0) w.push_back({*gen, exp});
  }
  return w;
}

Word Word::parse(GroupPtr owner, const std::string& text) {
  Letters w = parse_letters(*owner, text);
  return Word(std::move(owner), std::move(w));
}

std::string Word::to_string() const { return format_letters(*owner_, letters_); }

Word normal_form(const Word& w) { return Word(w.owner(), w.owner()->normalize(w.letters())); }

Word multiply(const Word& a, const Word& b) {
  if (!a.owner()->same_as(*b.owner())) throw Error(ErrorKind::MixedOwners, "words from different groups");
  return Word(a.owner(), a.owner()->multiply(a.letters(), b.letters()));
}

Word inverse(const Word& a) { return Word(a.owner(), a.owner()->inverse(a.letters())); }

bool is_trivial(const Word& w) { return w.owner()->normalize(w.letters()).empty(); }

// ---------------------------------------------------------------------------
// JSON

namespace {

std::vector<std::string> default_labels(std::size_t n, bool abelian) {
  static const std::vector<std::string> abc{"a", "b", "c"};
  if (abelian && n <= abc.size()) return {abc.begin(), abc.begin() + static_cast<long>(n)};
  if (n == 1) return {"x"};
  if (n == 2) return {"x", "y"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<std::string> labels_from(const nlohmann::json& j, bool abelian) {
  if (j.contains("labels")) return j.at("labels").get<std::vector<std::string>>();
  return default_labels(j.at("rank").get<std::size_t>(), abelian);
}

EdgeData edge_from(const GroupPtr& edge, const GroupPtr& target, const nlohmann::json& images,
                   const nlohmann::json* transversal) {
  EdgeData e;
  e.edge_group = edge;
  for (const auto& s : images) e.images.push_back(parse_letters(*target, s.get<std::string>()));
  if (transversal) {
    std::vector<Letters> reps;
    for (const auto& s : *transversal) reps.push_back(parse_letters(*target, s.get<std::string>()));
    e.transversal = reps;
  }
  return e;
}

const nlohmann::json* opt(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

nlohmann::json edge_images_json(const Group& target, const EdgeData& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& im : e.images) arr.push_back(format_letters(target, im));
  return arr;
}

nlohmann::json transversal_json(const Group& target, const EdgeData& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : *e.transversal) arr.push_back(format_letters(target, target.normalize(r)));
  return arr;
}

}  // namespace

GroupPtr group_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "trivial") return Group::trivial();
    if (type == "free") return Group::free(labels_from(j, false));
    if (type == "free_abelian" || type == "abelian") return Group::free_abelian(labels_from(j, true));
    if (type == "finite") {
      auto elements = j.at("elements").get<std::vector<std::string>>();
      std::vector<std::vector<int>> table;
      for (const auto& row : j.at("table")) {
        std::vector<int> r;
        for (const auto& x : row) {
          if (x.is_number_integer()) {
            r.push_back(x.get<int>());
          } else {
            auto it = std::find(elements.begin(), elements.end(), x.get<std::string>());
            if (it == elements.end()) throw Error(ErrorKind::Parse, "unknown element in table");
            r.push_back(static_cast<int>(it - elements.begin()));
          }
        }
        table.push_back(r);
      }
      return Group::finite(elements, table);
    }
    if (type == "hnn") {
      GroupPtr base = group_from_json(j.at("base"));
      const auto& a = j.at("alpha");
      const auto& b = j.at("beta");
      const nlohmann::json* sj = opt(j, "edge_group");
      if (!sj) sj = opt(a, "group");
      GroupPtr edge = sj ? group_from_json(*sj) : Group::trivial();
      nlohmann::json empty = nlohmann::json::array();
      EdgeData alpha = edge_from(edge, base, a.value("images", empty), opt(a, "transversal"));
      EdgeData beta = edge_from(edge, base, b.value("images", empty), opt(b, "transversal"));
      return Group::hnn(base, alpha, beta, j.value("stable", std::string("z")));
    }
    if (type == "amalgam") {
      GroupPtr left = group_from_json(j.at("left"));
      GroupPtr right = group_from_json(j.at("right"));
      const auto& e = j.at("edge");
      GroupPtr edge = e.contains("group") ? group_from_json(e.at("group")) : Group::trivial();
      nlohmann::json empty = nlohmann::json::array();
      EdgeData l = edge_from(edge, left, e.value("left_images", empty), opt(e, "left_transversal"));
      EdgeData r = edge_from(edge, right, e.value("right_images", empty), opt(e, "right_transversal"));
      return Group::amalgam(left, right, l, r);
    }
    throw Error(ErrorKind::Parse, "unknown group type '" + type + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("group descriptor: ") + ex.what());
  }
}

nlohmann::json group_to_json(const Group& g) {
  nlohmann::json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Group::Free>) {
          j = {{"type", "free"}, {"rank", v.labels.size()}, {"labels", v.labels}};
        } else if constexpr (std::is_same_v<T, Group::FreeAbelian>) {
          j = {{"type", "free_abelian"}, {"rank", v.labels.size()}, {"labels", v.labels}};
        } else if constexpr (std::is_same_v<T, Group::Finite>) {
          j = {{"type", "finite"}, {"elements", v.elements}, {"table", v.table}};
        } else if constexpr (std::is_same_v<T, Group::Hnn>) {
          j = {{"type", "hnn"},
               {"base", group_to_json(*v.base)},
               {"edge_group", group_to_json(*v.alpha.edge_group)},
               {"alpha", {{"images", edge_images_json(*v.base, v.alpha)}}},
               {"beta", {{"images", edge_images_json(*v.base, v.beta)}}},
               {"stable", v.stable}};
          if (v.alpha.transversal) j["alpha"]["transversal"] = transversal_json(*v.base, v.alpha);
          if (v.beta.transversal) j["beta"]["transversal"] = transversal_json(*v.base, v.beta);
        } else {
          j = {{"type", "amalgam"},
               {"left", group_to_json(*v.left)},
               {"right", group_to_json(*v.right)},
               {"edge",
                {{"group", group_to_json(*v.to_left.edge_group)},
                 {"left_images", edge_images_json(*v.left, v.to_left)},
                 {"right_images", edge_images_json(*v.right, v.to_right)}}}};
          if (v.to_left.transversal) j["edge"]["left_transversal"] = transversal_json(*v.left, v.to_left);
          if (v.to_right.transversal) j["edge"]["right_transversal"] = transversal_json(*v.right, v.to_right);
        }
      },
      g.variant());
  return j;
}

}  // namespace cohn
