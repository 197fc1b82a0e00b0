#include <doctest.h>

#include <random>

#include "ftl/error.hpp"
#include "ftl/generators.hpp"
#include "ftl/ssvft.hpp"
#include "support.hpp"

using namespace ftl;

namespace {

template <class L, class Read>
L round_trip(const L& l, Vertex n, Read read) {
  BitWriter w(vertex_bits(n));
  write_label(w, l);
  BitReader r(w.bytes(), vertex_bits(n));
  L back = read(r);
  r.expect_end();
  return back;
}

// Every (t,x,y) against the oracle; returns the number of queries.
std::size_t exhaustive_ss2(const Graph& g, Vertex s, Coverage& cov) {
  Hld h(g, s);
  auto labels = encode_ss2(g, h);
  const Vertex n = g.n();
  std::size_t q = 0;
  for (Vertex t = 0; t < n; ++t) {
    REQUIRE(round_trip(labels[t], n, read_label_ss2) == labels[t]);
  }
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) {
      auto r = testing_support::reps(g, {x, y});
      for (Vertex t = 0; t < n; ++t) {
        bool expect = t != x && t != y && s != x && s != y && r[t] == r[s];
        CAPTURE(s);
        CAPTURE(t);
        CAPTURE(x);
        CAPTURE(y);
        REQUIRE(decode_ss2(labels[t], labels[x], labels[y], &cov) == expect);
        ++q;
      }
    }
  return q;
}

// Reproduces one draw of the search that located rare configurations.
std::size_t pinned_deep(std::uint64_t seed, Vertex base, Vertex span, int extra_span, Coverage& cov) {
  std::mt19937_64 pick(seed);
  Vertex n = base + static_cast<Vertex>(pick() % static_cast<std::uint64_t>(span));
  int extra = 2 + static_cast<int>(pick() % static_cast<std::uint64_t>(extra_span));
  Graph g = testing_support::deep_graph(n, extra, seed);
  return exhaustive_ss2(g, static_cast<Vertex>(pick() % static_cast<std::uint64_t>(n)), cov);
}

}  // namespace

TEST_CASE("single-source single-fault labels") {
  Graph p = gen::path(6);
  Hld hp(p, 0);
  auto lp = encode_ss1f(p, hp);
  for (Vertex v = 0; v < 6; ++v) {
    CHECK(lp[v].bits.empty());
    CHECK(lp[v].heavy_bit.has_value() == (v < 5));
  }
  for (auto& [name, g] : testing_support::corpus(25, 60, 31)) {
    CAPTURE(name);
    for (Vertex s : {Vertex(0), Vertex(g.n() - 1)}) {
      Hld h(g, s);
      auto labels = encode_ss1f(g, h);
      for (Vertex t = 0; t < g.n(); ++t) {
        REQUIRE(round_trip(labels[t], g.n(), read_label_ss1f) == labels[t]);
        if (labels[t].reachable)
          REQUIRE(labels[t].bits.size() + (labels[t].heavy_bit ? 1 : 0) == h.interesting(t).size());
      }
      for (Vertex x = 0; x < g.n(); ++x) {
        auto r = testing_support::reps(g, {x});
        for (Vertex t = 0; t < g.n(); ++t) {
          bool expect = t != x && s != x && r[t] == r[s];
          REQUIRE(decode_ss1f(labels[t], labels[x]) == expect);
        }
      }
    }
  }
}

TEST_CASE("bitstrings over an upper interesting set are indexed by nl") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen::gnp(60, 0.06, seed);
    Hld h(g);
    for (Vertex v = 0; v < g.n(); ++v) {
      auto up = h.upper_interesting(v);
      REQUIRE(up.size() == static_cast<std::size_t>(h.nl(v)) + 1);
      for (std::size_t i = 0; i < up.size(); ++i) REQUIRE(h.nl(up[i]) == static_cast<Vertex>(i));
    }
  }
}

TEST_CASE("six-cycle and the two-edge graph") {
  Coverage cov;
  exhaustive_ss2(gen::cycle(6), 0, cov);
  Graph e = gen::path(2);
  Hld h(e, 0);
  auto l = encode_ss2(e, h);
  REQUIRE(l[0].entries.size() == 1);
  CHECK(l[1].entries.empty());
  CHECK(!l[0].entries[0].in.ell);
  CHECK(!l[0].entries[0].up.a);
  CHECK(!l[0].entries[0].side.g);
  CHECK(!decode_ss2(l[1], l[0], l[0]));
}

TEST_CASE("a vertex adjacent to the source stays connected") {
  Graph g = gen::gnp(16, 0.3, 9);
  Hld h(g, 0);
  auto l = encode_ss2(g, h);
  for (Vertex t : g.neighbors(0))
    for (Vertex x = 1; x < g.n(); ++x)
      for (Vertex y = 1; y < g.n(); ++y)
        if (t != x && t != y) CHECK(decode_ss2(l[t], l[x], l[y]));
}

TEST_CASE("exhaustive dual-fault queries agree with the oracle; every case fires") {
  Coverage cov;
  std::size_t queries = 0;
  auto graphs = testing_support::corpus(20, 100, 41);
  std::mt19937_64 rng(5);
  for (auto& [name, g] : graphs) {
    CAPTURE(name);
    queries += exhaustive_ss2(g, 0, cov);
    queries += exhaustive_ss2(g, static_cast<Vertex>(rng() % g.n()), cov);
  }
  // Denser and structured extras.
  for (std::uint64_t seed = 0; seed < 20; ++seed) queries += exhaustive_ss2(gen::gnp(14, 0.5, seed), 0, cov);
  for (std::uint64_t seed = 0; seed < 60; ++seed)
    queries += exhaustive_ss2(testing_support::deep_graph(12 + seed % 9, 3 + seed % 5, seed), 0, cov);
  queries += exhaustive_ss2(gen::grid(4, 5), 0, cov);
  // Found by search: deep graphs that reach the rarer Up steps (b between, disconnected, c between).
  queries += pinned_deep(367, 10, 20, 6, cov);
  queries += pinned_deep(349, 10, 20, 6, cov);
  queries += pinned_deep(4438, 15, 30, 10, cov);
  queries += exhaustive_ss2(gen::theta(4, 3), 2, cov);
  MESSAGE("queries: " << queries);
  for (int b = static_cast<int>(Branch::ss2_s1_reject); b <= static_cast<int>(Branch::ss2_ind_disconnected); ++b) {
    CAPTURE(kBranchNames[b]);
    CHECK(cov.hits[b] > 0);
  }
}

TEST_CASE("restricted labels under their promises") {
  std::size_t down = 0, up = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = seed % 3 ? testing_support::deep_graph(16, 4 + seed % 4, seed) : gen::gnp(15, 0.3, seed + 100);
    Hld h(g, 0);
    auto l = encode_ss2(g, h);
    std::vector<LabelDPrime> dp;
    std::vector<LabelUPrime> upl;
    for (auto& x : l) {
      dp.push_back(dprime_of(x));
      upl.push_back(uprime_of(x));
      REQUIRE(round_trip(dp.back(), g.n(), read_label_dprime) == dp.back());
      REQUIRE(round_trip(upl.back(), g.n(), read_label_uprime) == upl.back());
    }
    for (Vertex x = 0; x < g.n(); ++x) {
      Vertex hx = h.heavy(x);
      if (hx == kNoVertex || h.is_root(x)) continue;
      for (Vertex t = 0; t < g.n(); ++t) {
        if (!h.is_ancestor(hx, t)) continue;
        for (Vertex y = 0; y < g.n(); ++y) {
          if (y == t) continue;
          auto r = testing_support::reps(g, {x, y});
          bool expect = r[t] == r[0];
          // Down': t,y in T_{h(x)}, y not on T[h(x),t].
          if (h.is_ancestor(hx, y) && !h.is_ancestor(y, t) && y != x) {
            // The single-fault conditions are part of the case's entry contract.
            if (oracle_connected(g, 0, t, std::vector<Vertex>{x}) && oracle_connected(g, 0, t, std::vector<Vertex>{y})) {
              REQUIRE(decode_dprime(dp[t], dp[x], dp[y]) == expect);
              ++down;
            }
          }
          // Up': x in T_{h(y)}.
          Vertex hy = h.heavy(y);
          if (hy != kNoVertex && h.is_ancestor(hy, x) && !h.is_root(y)) {
            if (oracle_connected(g, 0, t, std::vector<Vertex>{x}) && oracle_connected(g, 0, t, std::vector<Vertex>{y})) {
              REQUIRE(decode_uprime(upl[t], upl[x], upl[y]) == expect);
              ++up;
            }
          }
        }
      }
    }
  }
  CHECK(down > 100);
  CHECK(up > 100);
}

TEST_CASE("mixed instances are rejected") {
  Graph a = gen::cycle(7), b = gen::path(7);
  Hld ha(a, 0), hb(b, 0);
  auto la = encode_ss2(a, ha);
  auto lb = encode_ss2(b, hb);
  CHECK_THROWS_AS(decode_ss2(la[3], lb[1], la[2]), LabelError);
}

TEST_CASE("parallel encoding is deterministic") {
  Graph g = gen::sparse_random(400, 12);
  Hld h(g, 0);
  auto p = encode_ss2(g, h, {.parallel = true});
  auto s = encode_ss2(g, h, {.parallel = false});
  CHECK(p == s);
}
