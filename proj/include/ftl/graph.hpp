#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftl {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on vertices 0..n-1 stored in CSR form with sorted adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n) : Graph(n, {}) {}
  // Throws InputError on self-loops, duplicates or out-of-range endpoints.
  Graph(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < n_; }

  // Same vertex set, every edge touching `removed` dropped.
  Graph without(std::span<const Vertex> removed) const;

  // Order-independent hash of the edge set (and n).
  std::uint64_t fingerprint() const;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offset_{0};
  std::vector<Vertex> adj_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t edge_hash(Edge e);

// Parses "n m" followed by m lines "u v". '#' lines and blank lines are skipped, CRLF tolerated.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string to_edge_list(const Graph& g);

struct ComponentMap {
  std::vector<Vertex> cid;  // kNoVertex for removed vertices
  std::vector<Vertex> removed;
  Vertex of(Vertex v) const { return cid[v]; }
  bool connected(Vertex a, Vertex b) const { return cid[a] != kNoVertex && cid[a] == cid[b]; }
};

// Components of G minus `removed`; each component is named by its largest vertex.
ComponentMap components(const Graph& g, std::span<const Vertex> removed = {});

bool oracle_connected(const Graph& g, Vertex u, Vertex v, std::span<const Vertex> faults);

// Union of k scan-first (BFS) forests, each taken on the edges left over by the previous ones.
Graph sparse_certificate(const Graph& g, int k);

}  // namespace ftl
