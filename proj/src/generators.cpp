#include "ftl/generators.hpp"

#include <cmath>
#include <random>

#include "ftl/error.hpp"

namespace ftl::gen {

Graph path(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

Graph cycle(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  if (n >= 3) e.push_back({0, n - 1});
  return Graph(n, std::move(e));
}

Graph star(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, std::move(e));
}

Graph wheel(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.push_back({0, i});
  for (Vertex i = 1; i + 1 < n; ++i) e.push_back({i, i + 1});
  if (n >= 4) e.push_back({1, n - 1});
  return Graph(n, std::move(e));
}

Graph complete(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, std::move(e));
}

Graph grid(Vertex rows, Vertex cols) {
  std::vector<Edge> e;
  auto id = [&](Vertex r, Vertex c) { return r * cols + c; };
  for (Vertex r = 0; r < rows; ++r)
    for (Vertex c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  return Graph(rows * cols, std::move(e));
}

Graph theta(Vertex branches, Vertex inner) {
  std::vector<Edge> e;
  Vertex next = 2;
  for (Vertex b = 0; b < branches; ++b) {
    if (inner == 0) {
      if (b == 0) e.push_back({0, 1});
      continue;
    }
    Vertex prev = 0;
    for (Vertex i = 0; i < inner; ++i) {
      e.push_back({std::min(prev, next), std::max(prev, next)});
      prev = next++;
    }
    e.push_back({1, prev});
  }
  return Graph(next, std::move(e));
}

Graph gnp(Vertex n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j});
  return Graph(n, std::move(e));
}

Graph sparse_random(Vertex n, std::uint64_t seed) {
  double p = n > 1 ? std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / n) : 0.0;
  return gnp(n, p, seed);
}

Graph family(const std::string& name, Vertex n, std::uint64_t seed) {
  if (name == "gnp") return sparse_random(n, seed);
  if (name == "cycle") return cycle(n);
  if (name == "wheel") return wheel(n);
  if (name == "grid") {
    Vertex side = static_cast<Vertex>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side < 1) side = 1;
    return grid(side, (n + side - 1) / side);
  }
  throw InputError("unknown graph family '" + name + "'");
}

}  // namespace ftl::gen
