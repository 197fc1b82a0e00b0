#include <doctest.h>

#include <cmath>
#include <random>

#include "ftl/error.hpp"
#include "ftl/generators.hpp"
#include "ftl/vftf.hpp"
#include "support.hpp"

using namespace ftl;

namespace {

struct Tally {
  std::size_t exact = 0, randomized = 0, exact_wrong = 0, randomized_wrong = 0;
};

// Every (u,v,F) with |F| <= 3 distinct faults, against the union-find oracle.
void exhaustive3(const Graph& g, const std::vector<LabelFvft>& l, Tally& t) {
  const Vertex n = g.n();
  std::vector<std::vector<Vertex>> sets = {{}};
  for (Vertex a = 0; a < n; ++a) {
    sets.push_back({a});
    for (Vertex b = a + 1; b < n; ++b) {
      sets.push_back({a, b});
      for (Vertex c = b + 1; c < n; ++c) sets.push_back({a, b, c});
    }
  }
  for (const auto& f : sets) {
    auto r = testing_support::reps(g, f);
    std::vector<const LabelFvft*> fl;
    for (Vertex x : f) fl.push_back(&l[x]);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        FvftTrace tr;
        bool got = decode_fvft(l[u], l[v], fl, &tr);
        bool expect = r[u] != -1 && r[v] != -1 && r[u] == r[v];
        if (tr.eft_calls == 0) {
          ++t.exact;
          t.exact_wrong += got != expect;
        } else {
          ++t.randomized;
          t.randomized_wrong += got != expect;
        }
      }
  }
}

}  // namespace

TEST_CASE("degree threshold and size bound formulas") {
  CHECK(degree_threshold(3, 65536) == 1536);
  CHECK(degree_threshold(4, 65536) == 32768);
  CHECK(degree_threshold(3, 4) == 12);
  CHECK(degree_threshold(3, 2) == 9);  // 6 * sqrt 2 = 8.49
  CHECK_THROWS_AS(degree_threshold(2, 100), InputError);
  const double c = 3.0;
  CHECK(predicted_size_bound(2, 1024, c) == doctest::Approx(2 * c * 1000.0));
  CHECK(predicted_size_bound(3, 65536, c) == doctest::Approx(2.0 * 3 * 256 * c * 4096));
  for (Vertex n = 16; n < 100000; n *= 2) {
    CHECK(predicted_size_bound(3, 2 * n, c) > predicted_size_bound(3, n, c));
    CHECK(predicted_size_bound(4, n, c) > predicted_size_bound(3, n, c));
  }
}

TEST_CASE("f = 2 is the 2-VFT scheme wrapped") {
  Graph g = gen::gnp(14, 0.3, 2);
  auto l = encode_fvft(g, {.f = 2});
  auto two = encode_2vft(g);
  for (Vertex v = 0; v < g.n(); ++v) {
    REQUIRE(l[v].two.has_value());
    CHECK(*l[v].two == two[v]);
  }
  for (Vertex x = 0; x < g.n(); ++x)
    for (Vertex y = 0; y < g.n(); ++y)
      for (Vertex u = 0; u < g.n(); ++u) {
        std::vector<const LabelFvft*> f = {&l[x], &l[y]};
        CHECK(decode_fvft(l[u], l[0], f) == testing_support::uf_connected(g, u, 0, {x, y}));
      }
}

TEST_CASE("high-degree vertices spawn nested 2-VFT instances of the graph without them") {
  Graph g = gen::gnp(200, 0.1, 6);
  Graph gp = sparse_certificate(g, 4);
  std::size_t top = 0;
  for (Vertex v = 0; v < g.n(); ++v) top = std::max(top, gp.degree(v));
  // The formula puts nobody above threshold at this size; lower it to reach the recursion.
  const auto th = static_cast<std::int64_t>(top) - 1;
  CHECK(degree_threshold(3, 200) > static_cast<std::int64_t>(top));
  FvftOptions opt{.f = 3, .seed = 4, .threshold = th};
  auto l = encode_fvft(g, opt);
  std::vector<Vertex> high;
  for (Vertex v = 0; v < g.n(); ++v)
    if (static_cast<std::int64_t>(gp.degree(v)) >= th) high.push_back(v);
  REQUIRE(!high.empty());
  MESSAGE("high-degree vertices: " << high.size());
  for (Vertex v = 0; v < g.n(); ++v) {
    CHECK(l[v].high == std::binary_search(high.begin(), high.end(), v));
    CHECK(l[v].low_edges.size() == (l[v].high ? 0 : gp.degree(v)));
    std::vector<Vertex> expect;
    for (Vertex x : high)
      if (x != v) expect.push_back(x);
    CHECK(l[v].nested_at == expect);
  }
  // Spot-check the nested labels against a direct 2-VFT build.
  Vertex x = high.front();
  std::vector<Vertex> gone = {x};
  auto direct = encode_2vft(gp.without(gone));
  for (Vertex v = 0; v < g.n(); v += 17) {
    if (v == x) continue;
    const auto& nested = l[v].nested[static_cast<std::size_t>(
        std::lower_bound(l[v].nested_at.begin(), l[v].nested_at.end(), x) - l[v].nested_at.begin())];
    REQUIRE(nested.f == 2);
    CHECK(*nested.two == direct[v]);
  }
}

TEST_CASE("seven-cycle with three faults, several seeds") {
  Graph c7 = gen::cycle(7);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto l = encode_fvft(c7, {.f = 3, .seed = seed});
    Tally t;
    exhaustive3(c7, l, t);
    CHECK(t.exact_wrong == 0);
    CHECK(t.randomized_wrong == 0);
  }
}

TEST_CASE("a failed wheel hub goes through the exact branch") {
  Graph w = gen::wheel(10);
  auto l = encode_fvft(w, {.f = 3, .seed = 1, .threshold = 5});
  CHECK(l[0].high);
  for (Vertex v = 1; v < 10; ++v) CHECK(!l[v].high);
  for (Vertex a = 1; a < 10; ++a)
    for (Vertex b = 1; b < 10; ++b)
      for (Vertex u = 1; u < 10; ++u)
        for (Vertex v = 1; v < 10; ++v) {
          std::vector<const LabelFvft*> f = {&l[a], &l[0], &l[b]};
          FvftTrace tr;
          bool got = decode_fvft(l[u], l[v], f, &tr);
          if (u != a && u != b && v != a && v != b && u != v) CHECK(tr.high_steps == 1);
          CHECK(tr.eft_calls == 0);
          CHECK(got == testing_support::uf_connected(w, u, v, {a, 0, b}));
        }
}

TEST_CASE("exhaustive f = 3 queries: exact branch never errs") {
  Tally t;
  std::mt19937_64 rng(12);
  std::vector<Graph> graphs = {gen::wheel(12), gen::grid(3, 4), gen::theta(3, 3), gen::star(9)};
  for (int i = 0; i < 6; ++i) graphs.push_back(gen::gnp(10 + static_cast<Vertex>(rng() % 5), 0.35, rng()));
  for (const auto& g : graphs) {
    for (std::int64_t th : {3, 4}) {
      auto l = encode_fvft(g, {.f = 3, .seed = rng(), .threshold = th});
      exhaustive3(g, l, t);
    }
  }
  MESSAGE("exact " << t.exact << " randomized " << t.randomized << " randomized errors " << t.randomized_wrong);
  CHECK(t.exact > 10000);
  CHECK(t.randomized > 10000);
  CHECK(t.exact_wrong == 0);
  CHECK(t.randomized_wrong * 1000 <= t.randomized);
}

TEST_CASE("randomized branch over 50 seeds") {
  std::mt19937_64 rng(77);
  std::size_t worst = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = gen::gnp(20 + static_cast<Vertex>(rng() % 45), 0.12, rng());
    auto l = encode_fvft(g, {.f = 3, .seed = seed});
    std::size_t wrong = 0;
    for (int q = 0; q < 200; ++q) {
      std::vector<Vertex> f;
      while (f.size() < 3) f.push_back(static_cast<Vertex>(rng() % g.n()));
      Vertex u = static_cast<Vertex>(rng() % g.n()), v = static_cast<Vertex>(rng() % g.n());
      std::vector<const LabelFvft*> fl = {&l[f[0]], &l[f[1]], &l[f[2]]};
      wrong += decode_fvft(l[u], l[v], fl) != testing_support::uf_connected(g, u, v, f);
    }
    worst = std::max(worst, wrong);
    total += wrong;
  }
  MESSAGE("errors over 10000 queries: " << total);
  CHECK(worst == 0);
}

TEST_CASE("certificate does not change answers") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 4; ++i) {
    Graph g = gen::gnp(9 + static_cast<Vertex>(rng() % 4), 0.5, rng());
    auto a = encode_fvft(g, {.f = 3, .seed = 2, .certificate = true, .threshold = 4});
    auto b = encode_fvft(g, {.f = 3, .seed = 2, .certificate = false, .threshold = 4});
    Tally ta, tb;
    exhaustive3(g, a, ta);
    exhaustive3(g, b, tb);
    CHECK(ta.exact_wrong + ta.randomized_wrong == 0);
    CHECK(tb.exact_wrong + tb.randomized_wrong == 0);
  }
}

TEST_CASE("serialization, sizes and the streaming size count agree") {
  Graph g = gen::gnp(40, 0.25, 3);
  for (int f : {3, 4}) {
    FvftOptions opt{.f = f, .seed = 9, .threshold = 11};
    auto l = encode_fvft(g, opt);
    auto streamed = fvft_label_sizes(g, opt);
    bool nested_seen = false;
    for (Vertex v = 0; v < g.n(); ++v) {
      BitWriter w(vertex_bits(g.n()));
      write_label(w, l[v]);
      BitReader r(w.bytes(), vertex_bits(g.n()));
      auto back = read_label_fvft(r);
      r.expect_end();
      REQUIRE(back == l[v]);
      FvftSize m = measure(l[v], g.n());
      CHECK(m.total == w.size_bits());
      CHECK(m.payload == w.payload_bits());
      CHECK(streamed[v].total == m.total);
      CHECK(streamed[v].level_payload == m.level_payload);
      nested_seen |= m.level_payload.size() > 1;
    }
    CHECK(nested_seen);
  }
}

TEST_CASE("budget, cap and instance checks") {
  Graph g = gen::cycle(8);
  auto l = encode_fvft(g, {.f = 3, .seed = 1});
  std::vector<const LabelFvft*> four = {&l[1], &l[2], &l[3], &l[4]};
  CHECK_THROWS_AS(decode_fvft(l[0], l[5], four), InputError);
  auto other = encode_fvft(g, {.f = 3, .seed = 2});
  std::vector<const LabelFvft*> mixed = {&other[1]};
  CHECK_THROWS_AS(decode_fvft(l[0], l[5], mixed), LabelError);
  CHECK_THROWS_AS(encode_fvft(g, {.f = 6}), InputError);
  CHECK_THROWS_AS(encode_fvft(g, {.f = 1}), InputError);
  std::vector<const LabelFvft*> none;
  CHECK(decode_fvft(l[3], l[3], none));
  std::vector<const LabelFvft*> self = {&l[3]};
  CHECK(!decode_fvft(l[3], l[3], self));
}

TEST_CASE("parallel and serial encodings are identical") {
  Graph g = gen::gnp(60, 0.2, 8);
  FvftOptions opt{.f = 3, .seed = 3, .threshold = 10};
  auto a = encode_fvft(g, opt);
  opt.encode.parallel = false;
  auto b = encode_fvft(g, opt);
  CHECK(a == b);
}
