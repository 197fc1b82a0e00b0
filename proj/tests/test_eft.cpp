#include <doctest.h>

#include <random>

#include "ftl/eft.hpp"
#include "ftl/error.hpp"
#include "ftl/generators.hpp"
#include "support.hpp"

using namespace ftl;

namespace {

// Union-find over the edges that survive; shares nothing with the decoder.
testing_support::UnionFind without_edges(const Graph& g, const std::vector<Edge>& dead) {
  testing_support::UnionFind uf(g.n());
  for (const auto& e : g.edges())
    if (std::find(dead.begin(), dead.end(), e) == dead.end()) uf.unite(e.u, e.v);
  return uf;
}

template <class L, class Read>
L round_trip(const L& l, Vertex n, Read read) {
  BitWriter w(vertex_bits(n));
  write_label(w, l);
  BitReader r(w.bytes(), vertex_bits(n));
  L back = read(r);
  r.expect_end();
  BitWriter c(vertex_bits(n), true);
  write_label(c, l);
  REQUIRE(c.size_bits() == w.size_bits());
  return back;
}

}  // namespace

TEST_CASE("three-vertex path with its first edge cut") {
  Graph g = gen::path(3);
  Hld h(g);
  auto l = encode_eft(g, h, 1);
  std::vector<EftEdgeLabel> f = {l.edge_label(g, 0, 1)};
  CHECK(!decode_eft(l.vertex[0], l.vertex[2], f));
  CHECK(decode_eft(l.vertex[1], l.vertex[2], f));
  CHECK(decode_eft(l.vertex[0], l.vertex[2], {}));
  CHECK_THROWS_AS(l.edge_label(g, 0, 2), InputError);
}

TEST_CASE("with no faults the answer is plain connectivity") {
  std::mt19937_64 rng(3);
  for (auto& [name, g] : testing_support::corpus(32, 40, 11)) {
    CAPTURE(name);
    Hld h(g);
    for (int s = 0; s < 3; ++s) {
      auto l = encode_eft(g, h, rng());
      auto comp = components(g);
      for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) REQUIRE(decode_eft(l.vertex[u], l.vertex[v], {}) == (comp.cid[u] == comp.cid[v]));
    }
  }
}

TEST_CASE("random edge faults: per-seed error rate stays under one in a thousand") {
  std::mt19937_64 rng(99);
  std::size_t worst = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen::gnp(16 + static_cast<Vertex>(rng() % 49), 0.05 + 0.05 * static_cast<double>(seed % 4), rng());
    if (g.m() == 0) g = gen::cycle(20);
    Hld h(g);
    auto l = encode_eft(g, h, seed);
    std::size_t errors = 0;
    for (int set = 0; set < 500; ++set) {
      std::size_t k = rng() % 9;
      std::vector<Edge> dead;
      std::vector<EftEdgeLabel> labels;
      for (std::size_t i = 0; i < k; ++i) {
        const Edge& e = g.edges()[rng() % g.m()];
        dead.push_back(e);
        labels.push_back(l.edge_label(g, e.u, e.v));
      }
      auto uf = without_edges(g, dead);
      for (int q = 0; q < 20; ++q) {
        Vertex u = static_cast<Vertex>(rng() % g.n()), v = static_cast<Vertex>(rng() % g.n());
        errors += decode_eft(l.vertex[u], l.vertex[v], labels) != (uf.find(u) == uf.find(v));
      }
    }
    worst = std::max(worst, errors);
    CAPTURE(seed);
    CHECK(errors <= 10);  // 10^4 queries per seed
  }
  MESSAGE("worst per-seed errors out of 10000: " << worst);
}

TEST_CASE("cutting every tree edge leaves only non-tree reconnections") {
  Graph g = gen::grid(4, 4);
  Hld h(g);
  auto l = encode_eft(g, h, 5);
  std::vector<EftEdgeLabel> tree;
  std::vector<Edge> dead;
  for (std::size_t k = 0; k < g.m(); ++k)
    if (l.edge[k].tree) {
      tree.push_back(l.edge[k]);
      dead.push_back(g.edges()[k]);
    }
  auto uf = without_edges(g, dead);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) CHECK(decode_eft(l.vertex[u], l.vertex[v], tree) == (uf.find(u) == uf.find(v)));
}

TEST_CASE("labels round-trip and mixed schemes are rejected") {
  Graph g = gen::gnp(24, 0.2, 4);
  Hld h(g);
  auto l = encode_eft(g, h, 8);
  for (const auto& x : l.vertex) CHECK(round_trip(x, g.n(), read_eft_vertex) == x);
  for (const auto& e : l.edge) CHECK(round_trip(e, g.n(), read_eft_edge) == e);
  auto other = encode_eft(g, h, 9);
  CHECK_THROWS_AS(decode_eft(l.vertex[0], other.vertex[1], {}), LabelError);
  std::vector<EftEdgeLabel> f = {other.edge[0]};
  CHECK_THROWS_AS(decode_eft(l.vertex[0], l.vertex[1], f), LabelError);
  EftEdgeLabel bad = l.edge[0];
  bad.eid.uid ^= 1;
  f = {bad};
  CHECK_THROWS_AS(decode_eft(l.vertex[0], l.vertex[1], f), LabelError);
}

TEST_CASE("components are kept apart") {
  std::vector<Edge> es = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}};
  Graph g(6, es);
  Hld h(g);
  auto l = encode_eft(g, h, 2);
  std::vector<EftEdgeLabel> f = {l.edge_label(g, 3, 4), l.edge_label(g, 0, 1)};
  CHECK(!decode_eft(l.vertex[0], l.vertex[3], {}));
  CHECK(decode_eft(l.vertex[0], l.vertex[1], f));
  CHECK(!decode_eft(l.vertex[3], l.vertex[5], f));
  CHECK(decode_eft(l.vertex[4], l.vertex[5], f));
}

TEST_CASE("parallel and serial encodings are identical") {
  Graph g = gen::sparse_random(300, 3);
  Hld h(g);
  auto a = encode_eft(g, h, 4, {.parallel = true});
  auto b = encode_eft(g, h, 4, {.parallel = false});
  CHECK(a.vertex == b.vertex);
  CHECK(a.edge == b.edge);
}
