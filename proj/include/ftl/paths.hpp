#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/traverse.hpp"

namespace ftl {

struct ReplacementPath {
  std::vector<Vertex> vertices;  // a first, b last
  std::int64_t weight = 0;
};

// Dijkstra under weight 1 for tree edges and n for the rest, run from `src` in G minus
// `faults`. Predecessors are resolved to the lowest-ID neighbour on some shortest path.
class PathTree {
 public:
  PathTree(const Graph& g, const Hld& h, Vertex src, std::span<const Vertex> faults,
           Vertex stop = kNoVertex);

  bool reached(Vertex v) const { return dist_[v] != kUnreached; }
  std::int64_t dist(Vertex v) const { return dist_[v]; }
  // src ... v; empty when v was not reached.
  std::vector<Vertex> path_to(Vertex v) const;

 private:
  static constexpr std::int64_t kUnreached = -1;
  std::int64_t weight(Vertex a, Vertex b) const;

  const Graph* g_;
  const Hld* h_;
  Vertex src_;
  std::vector<std::int64_t> dist_;
  std::vector<char> settled_;
  std::vector<char> faulty_;
};

// Throws InputError when a or b is a fault.
std::optional<ReplacementPath> replacement_path(const Graph& g, const Hld& h, Vertex a, Vertex b,
                                                std::span<const Vertex> faults);

// The special vertices below all take their tree from h; "s" is the root of a's tree.
// Results are absent exactly when the defining path or set does not exist.

// Last vertex of P_{s,a,par(a)} outside T_{par(a)}.
std::optional<Vertex> vertex_ell(const Graph& g, const Hld& h, Vertex a);
// First vertex of P_{a,s,par(a)} on T[s,par(a)).
std::optional<Vertex> vertex_f(const Graph& g, const Hld& h, Vertex a);
// First vertex of P_{s,u,par(u)} inside T_u.
std::optional<Vertex> vertex_q(const Graph& g, const Hld& h, Vertex u);
// Last vertex of P_{s,u,par(u)} inside T_{h(par(u))}.
std::optional<Vertex> vertex_g(const Graph& g, const Hld& h, Vertex u);

// The three readings of one replacement path P_{s,u,par(u)}.
struct PathMarks {
  std::optional<Vertex> ell, q, g;
};
PathMarks path_marks(const Hld& h, Vertex u, std::span<const Vertex> path);

struct AlphaResult {
  std::vector<Vertex> members;  // A_u, ascending
  std::optional<Vertex> alpha;  // LCA of A_u
};
AlphaResult alpha(const Graph& g, const Hld& h, Vertex u);
// Deepest / highest vertex v of T[s,par(u)) joined to u by a path internally avoiding T[s,par(u)].
std::optional<Vertex> beta(const Graph& g, const Hld& h, Vertex u);
std::optional<Vertex> vertex_a(const Graph& g, const Hld& h, Vertex u);
// Highest vertex of Q^(u,leaf] reachable from s internally avoiding Q^[u,leaf]. Q is named by
// its top vertex and u must lie on the root path of its leaf.
std::optional<Vertex> vertex_b(const Graph& g, const Hld& h, Vertex u, Vertex path_top);
// Deepest vertex of T[s,u) joined to h(u) internally avoiding T[s,u].
std::optional<Vertex> vertex_c(const Graph& g, const Hld& h, Vertex u);
// Deepest vertex of Q reachable from s internally avoiding {u} and Q minus T[s,u).
std::optional<Vertex> vertex_d(const Graph& g, const Hld& h, Vertex u, Vertex path_top);
// Up to two lowest-ID vertices c of T_{h(b)} with an a-c path avoiding T+_{h(b)} minus {c}.
std::vector<Vertex> analog_set(const Graph& g, const Hld& h, Vertex a, Vertex b);

// Workspace versions used by the label builders; same results, caller-owned Explorer.
std::optional<Vertex> alpha_with(Explorer& ex, const Hld& h, Vertex u);
std::optional<Vertex> vertex_c_with(Explorer& ex, const Hld& h, Vertex u);
std::optional<Vertex> vertex_b_with(Explorer& ex, const Hld& h, Vertex u, Vertex path_top);
std::optional<Vertex> vertex_d_with(Explorer& ex, const Hld& h, Vertex u, Vertex path_top);

// Heavy paths (by top vertex) met by T[from,to], from an ancestor of to, top-down.
std::vector<Vertex> paths_on(const Hld& h, Vertex from, Vertex to);

}  // namespace ftl
