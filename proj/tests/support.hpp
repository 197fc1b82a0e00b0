#pragma once

// Shared test helpers: an independent union-find connectivity oracle and the graph corpus.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ftl/generators.hpp"
#include "ftl/graph.hpp"

namespace testing_support {

using ftl::Graph;
using ftl::Vertex;

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(Vertex n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Vertex find(Vertex a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(Vertex a, Vertex b) { parent[find(a)] = find(b); }
};

// Union-find over the surviving edges; deliberately shares no code with the library.
inline UnionFind survivors(const Graph& g, const std::vector<Vertex>& faults) {
  std::vector<char> dead(g.n(), 0);
  for (Vertex x : faults) dead[x] = 1;
  UnionFind uf(g.n());
  for (const auto& e : g.edges())
    if (!dead[e.u] && !dead[e.v]) uf.unite(e.u, e.v);
  return uf;
}

inline bool uf_connected(const Graph& g, Vertex u, Vertex v, const std::vector<Vertex>& faults) {
  for (Vertex x : faults)
    if (x == u || x == v) return false;
  auto uf = survivors(g, faults);
  return uf.find(u) == uf.find(v);
}

// Connectivity matrix of G minus faults, as component representatives (-1 for faults).
inline std::vector<Vertex> reps(const Graph& g, const std::vector<Vertex>& faults) {
  auto uf = survivors(g, faults);
  std::vector<Vertex> r(g.n());
  for (Vertex v = 0; v < g.n(); ++v) r[v] = uf.find(v);
  for (Vertex x : faults) r[x] = -1;
  return r;
}

// A deep random tree (each vertex hangs within three steps of its predecessor) plus a few
// chords. BFS keeps such trees deep, which the up/side cases need.
inline Graph deep_graph(Vertex n, int extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ftl::Edge> es;
  auto add = [&](Vertex a, Vertex b) {
    if (a == b) return;
    ftl::Edge e{std::min(a, b), std::max(a, b)};
    if (std::find(es.begin(), es.end(), e) == es.end()) es.push_back(e);
  };
  for (Vertex i = 1; i < n; ++i) add(i - 1 - static_cast<Vertex>(rng() % std::min<Vertex>(i, 3)), i);
  for (int k = 0; k < extra; ++k) add(static_cast<Vertex>(rng() % n), static_cast<Vertex>(rng() % n));
  return Graph(n, es);
}

struct Named {
  std::string name;
  Graph g;
};

// Random G(n,p) graphs with n <= max_n and p in {0.1,0.2,0.4}, plus structured families.
inline std::vector<Named> corpus(Vertex max_n, int random_count, std::uint64_t seed = 1) {
  std::vector<Named> out;
  std::mt19937_64 rng(seed);
  const double ps[] = {0.1, 0.2, 0.4};
  for (int i = 0; i < random_count; ++i) {
    Vertex n = 4 + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(max_n - 3));
    double p = ps[i % 3];
    out.push_back({"gnp" + std::to_string(i), ftl::gen::gnp(n, p, rng())});
  }
  Vertex small = std::min<Vertex>(max_n, 12);
  out.push_back({"path", ftl::gen::path(small)});
  out.push_back({"cycle", ftl::gen::cycle(small)});
  out.push_back({"star", ftl::gen::star(small - 1)});
  out.push_back({"wheel", ftl::gen::wheel(small)});
  out.push_back({"grid", ftl::gen::grid(3, std::max<Vertex>(2, max_n / 3 > 5 ? 5 : max_n / 3))});
  out.push_back({"grid4", ftl::gen::grid(4, 4)});
  out.push_back({"theta", ftl::gen::theta(3, 3)});
  out.push_back({"theta_wide", ftl::gen::theta(4, 2)});
  out.push_back({"complete", ftl::gen::complete(6)});
  out.push_back({"edge", ftl::gen::path(2)});
  out.push_back({"single", Graph(1)});
  // Two components, to exercise the cross-component rules.
  {
    std::vector<ftl::Edge> es;
    for (Vertex i = 0; i < 4; ++i) es.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    es.push_back({0, 4});
    es.push_back({5, 6});
    es.push_back({6, 7});
    es.push_back({5, 7});
    for (auto& e : es)
      if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    out.push_back({"two_parts", Graph(9, es)});
  }
  return out;
}

}  // namespace testing_support
