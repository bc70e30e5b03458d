#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Piecewise planar tree-isometric permutations of the trivalent planar
// tree, presented as tree pairs.  The tree is modelled as two complete
// rooted binary halves glued along a root edge; a vertex is (half, path).
// A finite subtree containing both roots is a pair of caret trees, stored
// by its prefix-free leaf sets.  An element carries a leaf bijection
// (extended rigidly to the hanging branches) and an inner-vertex
// bijection.

namespace pei {

struct TreeVertex {
  int half = 0;        // 0 or 1
  std::string path;    // binary word from the half root

  friend bool operator==(const TreeVertex& a, const TreeVertex& b) {
    return a.half == b.half && a.path == b.path;
  }
  friend bool operator<(const TreeVertex& a, const TreeVertex& b) {
    if (a.half != b.half) return a.half < b.half;
    return a.path < b.path;
  }
};

// One half of a subtree: sorted prefix-free complete cover by leaf paths.
using HalfLeaves = std::vector<std::string>;

struct SubTree {
  HalfLeaves half[2];

  bool operator==(const SubTree& o) const { return half[0] == o.half[0] && half[1] == o.half[1]; }

  static SubTree root_edge() {
    SubTree t;
    t.half[0] = {""};
    t.half[1] = {""};
    return t;
  }

  std::vector<TreeVertex> leaves() const {
    std::vector<TreeVertex> out;
    for (int k = 0; k < 2; ++k)
      for (const auto& p : half[k]) out.push_back({k, p});
    return out;
  }

  std::vector<TreeVertex> inner_vertices() const {
    std::set<TreeVertex> out;
    for (int k = 0; k < 2; ++k)
      for (const auto& p : half[k])
        for (size_t l = 0; l < p.size(); ++l) out.insert({k, p.substr(0, l)});
    return std::vector<TreeVertex>(out.begin(), out.end());
  }

  bool is_leaf(const TreeVertex& v) const {
    return std::binary_search(half[v.half].begin(), half[v.half].end(), v.path);
  }

  // leaf whose branch contains the vertex, when one exists
  std::optional<TreeVertex> covering_leaf(const TreeVertex& v) const {
    for (const auto& p : half[v.half])
      if (v.path.size() >= p.size() && v.path.compare(0, p.size(), p) == 0)
        return TreeVertex{v.half, p};
    return std::nullopt;
  }

  void validate() const {
    for (int k = 0; k < 2; ++k) {
      if (half[k].empty()) throw std::invalid_argument("subtree: empty half cover");
      if (!std::is_sorted(half[k].begin(), half[k].end()))
        throw std::invalid_argument("subtree: leaves not sorted");
      for (size_t i = 0; i < half[k].size(); ++i)
        for (size_t j = i + 1; j < half[k].size(); ++j) {
          const auto& a = half[k][i];
          const auto& b = half[k][j];
          if (b.size() >= a.size() && b.compare(0, a.size(), a) == 0)
            throw std::invalid_argument("subtree: leaf set not prefix-free");
        }
      // completeness: every inner vertex has both children present
      std::set<std::string> prefixes;
      for (const auto& p : half[k])
        for (size_t l = 0; l < p.size(); ++l) prefixes.insert(p.substr(0, l));
      for (const auto& w : prefixes) {
        for (char c : {'0', '1'}) {
          std::string child = w + c;
          bool is_pref = prefixes.count(child) > 0;
          bool is_lf = std::binary_search(half[k].begin(), half[k].end(), child);
          if (!is_pref && !is_lf) throw std::invalid_argument("subtree: missing caret child");
        }
      }
    }
  }
};

// Tree pair with leaf and inner-vertex bijections.
struct TreePairElement {
  SubTree domain;
  SubTree range;
  std::map<TreeVertex, TreeVertex> leaf_bij;
  std::map<TreeVertex, TreeVertex> inner_bij;
};

// Reduced tree pair without the inner data: an element of the boundary
// group V.
struct VElement {
  SubTree domain;
  SubTree range;
  std::map<TreeVertex, TreeVertex> leaf_bij;

  bool operator==(const VElement& o) const {
    return domain == o.domain && range == o.range && leaf_bij == o.leaf_bij;
  }
};

namespace tree_detail {

inline void replace_leaf(HalfLeaves& hl, const std::string& leaf) {
  auto it = std::lower_bound(hl.begin(), hl.end(), leaf);
  if (it == hl.end() || *it != leaf) throw std::logic_error("replace_leaf: leaf missing");
  *it = leaf + "0";
  hl.insert(it + 1, leaf + "1");
}

inline void contract_leaf_pair(HalfLeaves& hl, const std::string& parent) {
  auto i0 = std::lower_bound(hl.begin(), hl.end(), parent + "0");
  if (i0 == hl.end() || *i0 != parent + "0") throw std::logic_error("contract: child missing");
  *i0 = parent;
  auto i1 = std::lower_bound(hl.begin(), hl.end(), parent + "1");
  if (i1 == hl.end() || *i1 != parent + "1") throw std::logic_error("contract: child missing");
  hl.erase(i1);
}

// Leaves of the union of two covers of the same half: each leaf of a is
// kept unless b refines it there.
inline HalfLeaves merge_leafsets(const HalfLeaves& a, const HalfLeaves& b) {
  std::set<std::string> out;
  auto finer = [](const std::string& x, const HalfLeaves& other, std::set<std::string>& sink) {
    bool replaced = false;
    for (const auto& y : other)
      if (y.size() > x.size() && y.compare(0, x.size(), x) == 0) {
        sink.insert(y);
        replaced = true;
      }
    if (!replaced) sink.insert(x);
  };
  for (const auto& x : a) finer(x, b, out);
  for (const auto& y : b) finer(y, a, out);
  return HalfLeaves(out.begin(), out.end());
}

}  // namespace tree_detail

inline void validate_pair(const TreePairElement& e) {
  e.domain.validate();
  e.range.validate();
  auto dl = e.domain.leaves();
  auto rl = e.range.leaves();
  if (dl.size() != rl.size()) throw std::invalid_argument("tree pair: leaf counts differ");
  std::set<TreeVertex> targets;
  for (const auto& v : dl) {
    auto it = e.leaf_bij.find(v);
    if (it == e.leaf_bij.end()) throw std::invalid_argument("tree pair: leaf bijection incomplete");
    if (!e.range.is_leaf(it->second))
      throw std::invalid_argument("tree pair: leaf image is not a range leaf");
    if (!targets.insert(it->second).second)
      throw std::invalid_argument("tree pair: leaf bijection not injective");
  }
  if (e.leaf_bij.size() != dl.size()) throw std::invalid_argument("tree pair: spurious leaf images");
  auto di = e.domain.inner_vertices();
  auto ri = e.range.inner_vertices();
  if (di.size() != ri.size()) throw std::invalid_argument("tree pair: inner counts differ");
  std::set<TreeVertex> itargets;
  std::set<TreeVertex> rset(ri.begin(), ri.end());
  for (const auto& v : di) {
    auto it = e.inner_bij.find(v);
    if (it == e.inner_bij.end()) throw std::invalid_argument("tree pair: inner bijection incomplete");
    if (!rset.count(it->second))
      throw std::invalid_argument("tree pair: inner image is not a range inner vertex");
    if (!itargets.insert(it->second).second)
      throw std::invalid_argument("tree pair: inner bijection not injective");
  }
  if (e.inner_bij.size() != di.size())
    throw std::invalid_argument("tree pair: spurious inner images");
}

inline TreePairElement identity_pair() {
  TreePairElement e;
  e.domain = SubTree::root_edge();
  e.range = SubTree::root_edge();
  for (int k = 0; k < 2; ++k) e.leaf_bij[{k, ""}] = {k, ""};
  return e;
}

// Expansion at a domain leaf: the boundary moves one caret deeper on both
// sides; the leaf becomes an inner vertex.  The vertex is taken by value:
// the map node holding it dies mid-way.
inline void expand_at(TreePairElement& e, TreeVertex a) {
  auto it = e.leaf_bij.find(a);
  if (it == e.leaf_bij.end()) throw std::invalid_argument("expand_at: not a domain leaf");
  TreeVertex b = it->second;
  tree_detail::replace_leaf(e.domain.half[a.half], a.path);
  tree_detail::replace_leaf(e.range.half[b.half], b.path);
  e.leaf_bij.erase(a);
  e.leaf_bij[{a.half, a.path + "0"}] = {b.half, b.path + "0"};
  e.leaf_bij[{a.half, a.path + "1"}] = {b.half, b.path + "1"};
  e.inner_bij[a] = b;
}

// One reduction step when a caret pair is redundant; returns false when
// the element is already reduced.
inline bool reduce_step(TreePairElement& e) {
  for (const auto& [v_ref, u_ref] : e.inner_bij) {
    TreeVertex v = v_ref, u = u_ref;  // copies: the node dies on contraction
    TreeVertex v0{v.half, v.path + "0"}, v1{v.half, v.path + "1"};
    if (!e.domain.is_leaf(v0) || !e.domain.is_leaf(v1)) continue;
    auto i0 = e.leaf_bij.find(v0);
    auto i1 = e.leaf_bij.find(v1);
    if (i0 == e.leaf_bij.end() || i1 == e.leaf_bij.end()) continue;
    if (!(i0->second == TreeVertex{u.half, u.path + "0"})) continue;
    if (!(i1->second == TreeVertex{u.half, u.path + "1"})) continue;
    if (!e.range.is_leaf(i0->second) || !e.range.is_leaf(i1->second)) continue;
    tree_detail::contract_leaf_pair(e.domain.half[v.half], v.path);
    tree_detail::contract_leaf_pair(e.range.half[u.half], u.path);
    e.leaf_bij.erase(v0);
    e.leaf_bij.erase(v1);
    e.leaf_bij[v] = u;
    e.inner_bij.erase(v);
    return true;
  }
  return false;
}

inline TreePairElement reduced(TreePairElement e) {
  while (reduce_step(e)) {
  }
  return e;
}

inline bool pairs_equal(const TreePairElement& a, const TreePairElement& b) {
  TreePairElement ra = reduced(a), rb = reduced(b);
  return ra.domain == rb.domain && ra.range == rb.range && ra.leaf_bij == rb.leaf_bij &&
         ra.inner_bij == rb.inner_bij;
}

// Expands e until its range covers the given subtree.
inline void expand_range_to(TreePairElement& e, const SubTree& w) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : e.leaf_bij) {
      // b must stay a leaf of w or lie below a leaf of w; if b is a
      // proper prefix of some w-leaf, expand.
      for (const auto& p : w.half[b.half]) {
        if (p.size() > b.path.size() && p.compare(0, b.path.size(), b.path) == 0) {
          expand_at(e, a);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
}

inline void expand_domain_to(TreePairElement& e, const SubTree& w) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : e.leaf_bij) {
      for (const auto& p : w.half[a.half]) {
        if (p.size() > a.path.size() && p.compare(0, a.path.size(), a.path) == 0) {
          expand_at(e, a);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
}

// compose(e, f): first e, then f.
inline TreePairElement compose(const TreePairElement& e0, const TreePairElement& f0) {
  TreePairElement e = e0, f = f0;
  SubTree w;
  for (int k = 0; k < 2; ++k)
    w.half[k] = tree_detail::merge_leafsets(e.range.half[k], f.domain.half[k]);
  expand_range_to(e, w);
  expand_domain_to(f, w);
  if (!(e.range == f.domain)) throw std::logic_error("compose: expansion failed to align");
  TreePairElement r;
  r.domain = e.domain;
  r.range = f.range;
  for (const auto& [a, b] : e.leaf_bij) r.leaf_bij[a] = f.leaf_bij.at(b);
  for (const auto& [a, b] : e.inner_bij) r.inner_bij[a] = f.inner_bij.at(b);
  return r;
}

inline TreePairElement invert(const TreePairElement& e) {
  TreePairElement r;
  r.domain = e.range;
  r.range = e.domain;
  for (const auto& [a, b] : e.leaf_bij) r.leaf_bij[b] = a;
  for (const auto& [a, b] : e.inner_bij) r.inner_bij[b] = a;
  return r;
}

// Action on an arbitrary vertex of the tree.
inline TreeVertex apply(const TreePairElement& e, const TreeVertex& v) {
  auto leaf = e.domain.covering_leaf(v);
  if (leaf) {
    TreeVertex image = e.leaf_bij.at(*leaf);
    return {image.half, image.path + v.path.substr(leaf->path.size())};
  }
  auto it = e.inner_bij.find(v);
  if (it != e.inner_bij.end()) return it->second;
  throw std::invalid_argument("apply: vertex not addressed by the pair");
}

// ---- the quotient onto V ----

inline bool v_reduce_step(VElement& e) {
  // candidate parents: domain leaves that come in sibling pairs
  std::set<std::string> parents[2];
  for (int k = 0; k < 2; ++k)
    for (const auto& p : e.domain.half[k])
      if (!p.empty()) parents[k].insert(p.substr(0, p.size() - 1));
  for (int k = 0; k < 2; ++k)
    for (const auto& w : parents[k]) {
      TreeVertex v0{k, w + "0"}, v1{k, w + "1"};
      if (!e.domain.is_leaf(v0) || !e.domain.is_leaf(v1)) continue;
      auto i0 = e.leaf_bij.find(v0);
      auto i1 = e.leaf_bij.find(v1);
      if (i0 == e.leaf_bij.end() || i1 == e.leaf_bij.end()) continue;
      TreeVertex u0 = i0->second;  // copies: the nodes die below
      TreeVertex u1 = i1->second;
      if (u0.half != u1.half) continue;
      if (u0.path.empty() || u1.path.empty()) continue;
      if (u0.path.substr(0, u0.path.size() - 1) != u1.path.substr(0, u1.path.size() - 1)) continue;
      if (u0.path.back() != '0' || u1.path.back() != '1') continue;
      std::string uw = u0.path.substr(0, u0.path.size() - 1);
      tree_detail::contract_leaf_pair(e.domain.half[k], w);
      tree_detail::contract_leaf_pair(e.range.half[u0.half], uw);
      e.leaf_bij.erase(v0);
      e.leaf_bij.erase(v1);
      e.leaf_bij[{k, w}] = {u0.half, uw};
      return true;
    }
  return false;
}

inline VElement v_reduced(VElement e) {
  while (v_reduce_step(e)) {
  }
  return e;
}

// Projection to the boundary group: forget the inner data and reduce.
inline VElement to_v(const TreePairElement& e) {
  VElement v;
  v.domain = e.domain;
  v.range = e.range;
  v.leaf_bij = e.leaf_bij;
  return v_reduced(v);
}

inline VElement v_identity() {
  VElement v;
  v.domain = SubTree::root_edge();
  v.range = SubTree::root_edge();
  for (int k = 0; k < 2; ++k) v.leaf_bij[{k, ""}] = {k, ""};
  return v;
}

inline VElement v_compose(const VElement& a0, const VElement& b0) {
  TreePairElement ea, eb;
  ea.domain = a0.domain;
  ea.range = a0.range;
  ea.leaf_bij = a0.leaf_bij;
  eb.domain = b0.domain;
  eb.range = b0.range;
  eb.leaf_bij = b0.leaf_bij;
  SubTree w;
  for (int k = 0; k < 2; ++k)
    w.half[k] = tree_detail::merge_leafsets(ea.range.half[k], eb.domain.half[k]);
  expand_range_to(ea, w);
  expand_domain_to(eb, w);
  VElement r;
  r.domain = ea.domain;
  r.range = eb.range;
  for (const auto& [x, y] : ea.leaf_bij) r.leaf_bij[x] = eb.leaf_bij.at(y);
  return v_reduced(r);
}

inline VElement v_invert(const VElement& a) {
  VElement r;
  r.domain = a.range;
  r.range = a.domain;
  for (const auto& [x, y] : a.leaf_bij) r.leaf_bij[y] = x;
  return r;
}

// Finite support is exactly triviality of the boundary action.
inline bool has_finite_support(const TreePairElement& e) {
  return to_v(e) == v_identity();
}

// ---- forest classification ----

// A summary description of a polyhedral vertex set: rooted components
// by root pattern, finite components, isolated vertices, and marked
// removals.
struct ForestDescription {
  int t0 = 0;                      // rooted components, degree-2 root
  int t1 = 0;                      // rooted components, root a leaf
  int full = 0;                    // copies of the whole tree
  std::vector<long long> finite;   // finite components by vertex count
  long long isolated = 0;
  long long removed = 0;
};

// Normal-form index k of the forest under the reduction moves: a rooted
// tree with a leaf root is a rooted tree plus one vertex, a full tree is
// two rooted trees, a finite component is its vertex count, and two
// rooted trees plus a spare vertex merge into one.
inline long long classify_forest(const ForestDescription& f) {
  long long trees = f.t0 + f.t1 + 2LL * f.full;
  long long net = f.isolated + f.t1 - f.removed;
  for (long long v : f.finite) {
    if (v < 1) throw std::invalid_argument("classify_forest: empty finite component");
    net += v;
  }
  if (trees == 0)
    throw std::invalid_argument("classify_forest: no rooted component, finite forests carry no type");
  return net - (trees - 1);
}

}  // namespace pei
