#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "ftl/graph.hpp"

namespace ftl {

// Ancestry interval: a is an ancestor of b iff a.tin <= b.tin < a.tout.
struct Interval {
  Vertex tin = 0;
  Vertex tout = 0;
  bool contains(const Interval& o) const { return tin <= o.tin && o.tin < tout; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ExtendedId {
  Vertex id = kNoVertex;
  Interval anc;
  std::optional<Vertex> heavy;  // heavy child
  Interval heavy_anc;           // valid iff heavy
  Vertex nl = 0;                // light vertices on the root path, self included
  Vertex path = kNoVertex;      // heavy path, named by its top vertex
  friend bool operator==(const ExtendedId&, const ExtendedId&) = default;
};

enum class Ancestry { none, ancestor_heavy, ancestor_light, descendant, equal };

// Relation of a to b, read from the two IDs only.
Ancestry ancestry(const ExtendedId& a, const ExtendedId& b);
// a is b or an ancestor of b.
inline bool is_ancestor(const ExtendedId& a, const ExtendedId& b) { return a.anc.contains(b.anc); }
inline bool is_strict_ancestor(const ExtendedId& a, const ExtendedId& b) {
  return a.id != b.id && a.anc.contains(b.anc);
}
inline bool is_root(const ExtendedId& a) { return a.anc.tin == 0; }
// a is a strict ancestor of b and the child of a toward b is light.
inline bool is_light_ancestor(const ExtendedId& a, const ExtendedId& b) {
  return ancestry(a, b) == Ancestry::ancestor_light;
}
// a = b or a is a light ancestor of b, i.e. a belongs to the upper interesting set of b.
inline bool in_upper_interesting(const ExtendedId& a, const ExtendedId& b) {
  Ancestry r = ancestry(a, b);
  return r == Ancestry::equal || r == Ancestry::ancestor_light;
}

// BFS spanning forest with heavy-light decomposition. Each component is rooted at its
// smallest vertex, except that a given source roots its own component. DFS intervals restart at 0 per root.
class Hld {
 public:
  explicit Hld(const Graph& g);
  Hld(const Graph& g, Vertex source);

  Vertex n() const { return static_cast<Vertex>(parent_.size()); }
  bool in_tree(Vertex v) const { return root_[v] != kNoVertex; }
  Vertex root_of(Vertex v) const { return root_[v]; }
  bool is_root(Vertex v) const { return root_[v] == v; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  Vertex depth(Vertex v) const { return depth_[v]; }
  Vertex heavy(Vertex v) const { return heavy_[v]; }
  Vertex size(Vertex v) const { return size_[v]; }
  Vertex tin(Vertex v) const { return tin_[v]; }
  Vertex tout(Vertex v) const { return tin_[v] + size_[v]; }
  Vertex nl(Vertex v) const { return nl_[v]; }
  Vertex path_top(Vertex v) const { return top_[v]; }
  Vertex path_leaf(Vertex top) const { return leaf_[top]; }
  bool is_light(Vertex v) const { return parent_[v] != kNoVertex && heavy_[parent_[v]] != v; }
  bool is_heavy_child(Vertex v) const { return parent_[v] != kNoVertex && heavy_[parent_[v]] == v; }
  std::span<const Vertex> children(Vertex v) const {
    return {child_list_.data() + child_off_[v], child_list_.data() + child_off_[v + 1]};
  }
  // Tree vertices in BFS order (parents before children).
  const std::vector<Vertex>& order() const { return order_; }
  // Vertices of T_v in preorder.
  std::span<const Vertex> subtree(Vertex v) const { return {pre_.data() + pos_[v], static_cast<std::size_t>(size_[v])}; }

  // a is b or an ancestor of b (same tree).
  bool is_ancestor(Vertex a, Vertex b) const {
    return root_[a] == root_[b] && root_[a] != kNoVertex && tin_[a] <= tin_[b] && tin_[b] < tout(a);
  }
  bool is_strict_ancestor(Vertex a, Vertex b) const { return a != b && is_ancestor(a, b); }

  ExtendedId eid(Vertex v) const;
  std::optional<ExtendedId> eid_opt(std::optional<Vertex> v) const {
    if (!v) return std::nullopt;
    return eid(*v);
  }

  // Light vertices on T[s,a] by depth, followed by h(a) when present.
  std::vector<Vertex> interesting(Vertex a) const;
  // Parents of the light vertices on T[s,a] by depth, followed by a.
  std::vector<Vertex> upper_interesting(Vertex a) const;
  // T[s,a] from the root down.
  std::vector<Vertex> root_path(Vertex a) const;
  // Vertices of the heavy path with the given top, top first.
  std::vector<Vertex> heavy_path(Vertex top) const;

  // Child of a on T[a,b]; a must be a strict ancestor of b.
  Vertex child_on_path(Vertex a, Vertex b) const;
  Vertex lca(Vertex a, Vertex b) const;

 private:
  void build(const Graph& g, const std::vector<Vertex>& roots);

  std::vector<Vertex> root_, parent_, depth_, heavy_, size_, tin_, nl_, top_, leaf_;
  std::vector<Vertex> pos_, pre_;  // global preorder slot per vertex, and its inverse
  std::vector<std::size_t> child_off_;
  std::vector<Vertex> child_list_;
  std::vector<Vertex> order_;
};

}  // namespace ftl
