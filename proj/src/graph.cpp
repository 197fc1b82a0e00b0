#include "ftl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ftl/error.hpp"
#include "ftl/traverse.hpp"

namespace ftl {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t edge_hash(Edge e) {
  return mix64((static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v));
}

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  for (Edge& e : edges) {
    if (!contains(e.u) || !contains(e.v))
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw InputError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
  edges_ = std::move(edges);

  offset_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offset_[e.u + 1];
    ++offset_[e.v + 1];
  }
  for (Vertex v = 0; v < n_; ++v) offset_[v + 1] += offset_[v];
  adj_.resize(offset_[n_]);
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
  for (Vertex v = 0; v < n_; ++v) std::sort(adj_.begin() + offset_[v], adj_.begin() + offset_[v + 1]);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::without(std::span<const Vertex> removed) const {
  std::vector<char> gone(n_, 0);
  for (Vertex x : removed) gone[x] = 1;
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const Edge& e : edges_)
    if (!gone[e.u] && !gone[e.v]) kept.push_back(e);
  return Graph(n_, std::move(kept));
}

std::uint64_t Graph::fingerprint() const {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(n_));
  for (const Edge& e : edges_) h ^= edge_hash(e);
  return h;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

// Reads exactly two non-negative integers from a line.
bool parse_pair(std::string_view s, long long& a, long long& b) {
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto skip = [&] {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
  };
  skip();
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc() || r1.ptr == p) return false;
  p = r1.ptr;
  if (p < end && *p != ' ' && *p != '\t') return false;
  skip();
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc() || r2.ptr == p) return false;
  p = r2.ptr;
  skip();
  return p == end;
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    long long a = 0, b = 0;
    if (!parse_pair(line, a, b)) throw ParseError(line_no, "expected two non-negative integers");
    if (!have_header) {
      if (a < 0 || b < 0 || a > (1LL << 30)) throw ParseError(line_no, "bad header");
      n = a;
      m = b;
      have_header = true;
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) throw ParseError(line_no, "more edge lines than declared");
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(line_no, "vertex out of range");
    if (a == b) throw ParseError(line_no, "self-loop");
    edges.push_back({static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))});
    edge_line.push_back(line_no);
  }
  if (!have_header) throw ParseError(0, "missing header line");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return edges[x] < edges[y] || (edges[x] == edges[y] && edge_line[x] < edge_line[y]);
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (edges[order[i]] == edges[order[i - 1]]) throw ParseError(edge_line[order[i]], "duplicate edge");
  return Graph(static_cast<Vertex>(n), std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_graph(ss.str());
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

ComponentMap components(const Graph& g, std::span<const Vertex> removed) {
  ComponentMap map;
  map.removed.assign(removed.begin(), removed.end());
  std::sort(map.removed.begin(), map.removed.end());
  map.removed.erase(std::unique(map.removed.begin(), map.removed.end()), map.removed.end());
  for (Vertex x : map.removed)
    if (!g.contains(x)) throw InputError("removed vertex " + std::to_string(x) + " out of range");
  Explorer ex(g);
  ex.block_all(map.removed);
  ex.label_components(map.cid);
  return map;
}

bool oracle_connected(const Graph& g, Vertex u, Vertex v, std::span<const Vertex> faults) {
  if (!g.contains(u) || !g.contains(v)) throw InputError("query vertex out of range");
  for (Vertex x : faults)
    if (!g.contains(x)) throw InputError("fault vertex " + std::to_string(x) + " out of range");
  for (Vertex x : faults)
    if (x == u || x == v) return false;
  if (u == v) return true;
  Explorer ex(g);
  ex.block_all(faults);
  return ex.connected(u, v);
}

Graph sparse_certificate(const Graph& g, int k) {
  if (k < 1) throw InputError("certificate parameter must be >= 1");
  std::vector<Edge> kept;
  Graph rest = g;
  for (int round = 0; round < k && rest.m() > 0; ++round) {
    const Vertex n = rest.n();
    std::vector<char> marked(n, 0);
    std::vector<Edge> forest;
    std::vector<Vertex> queue;
    for (Vertex r = 0; r < n; ++r) {
      if (marked[r]) continue;
      marked[r] = 1;
      queue.assign(1, r);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex z = queue[head];
        for (Vertex w : rest.neighbors(z)) {
          if (marked[w]) continue;
          marked[w] = 1;
          forest.push_back({std::min(z, w), std::max(z, w)});
          queue.push_back(w);
        }
      }
    }
    std::sort(forest.begin(), forest.end());
    std::vector<Edge> left;
    std::set_difference(rest.edges().begin(), rest.edges().end(), forest.begin(), forest.end(),
                        std::back_inserter(left));
    kept.insert(kept.end(), forest.begin(), forest.end());
    rest = Graph(n, std::move(left));
  }
  return Graph(g.n(), std::move(kept));
}

}  // namespace ftl
