#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftl/graph.hpp"

namespace ftl {

// Reusable BFS workspace over a fixed graph. Blocked vertices and visit marks are epoch
// stamped, so resetting either is O(1). Not thread-safe; use one per thread.
class Explorer {
 public:
  explicit Explorer(const Graph& g);

  const Graph& graph() const { return *g_; }

  void clear_blocks() { ++block_epoch_; }
  void block(Vertex v) { block_mark_[v] = block_epoch_; }
  template <class Range>
  void block_all(const Range& vs) {
    for (Vertex v : vs) block(v);
  }
  bool blocked(Vertex v) const { return block_mark_[v] == block_epoch_; }

  // Vertices reachable from src without entering blocked vertices. src must be unblocked.
  std::span<const Vertex> reach(Vertex src);
  // Vertices w having a src-w path whose interior avoids blocked vertices. src is always
  // expanded; blocked vertices are reported as endpoints but never expanded.
  std::span<const Vertex> reach_internal(Vertex src);
  bool seen(Vertex v) const { return seen_mark_[v] == seen_epoch_; }

  // Largest vertex ID in src's component of G minus blocked; kNoVertex if src is blocked.
  Vertex component_id(Vertex src);
  // True iff a,b unblocked and joined by a path avoiding blocked vertices.
  bool connected(Vertex a, Vertex b);
  // Full component labelling of G minus blocked.
  void label_components(std::vector<Vertex>& cid);

 private:
  const Graph* g_;
  std::vector<std::uint32_t> block_mark_;
  std::vector<std::uint32_t> seen_mark_;
  std::uint32_t block_epoch_ = 1;
  std::uint32_t seen_epoch_ = 1;
  std::vector<Vertex> queue_;
};

}  // namespace ftl
