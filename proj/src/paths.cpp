#include "ftl/paths.hpp"

#include <algorithm>
#include <queue>

#include "ftl/error.hpp"

namespace ftl {

PathTree::PathTree(const Graph& g, const Hld& h, Vertex src, std::span<const Vertex> faults, Vertex stop)
    : g_(&g), h_(&h), src_(src), dist_(g.n(), kUnreached), settled_(g.n(), 0), faulty_(g.n(), 0) {
  for (Vertex x : faults) faulty_[x] = 1;
  if (faulty_[src]) return;
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist_[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, z] = pq.top();
    pq.pop();
    if (settled_[z]) continue;
    settled_[z] = 1;
    if (z == stop) break;
    for (Vertex w : g.neighbors(z)) {
      if (faulty_[w] || settled_[w]) continue;
      std::int64_t nd = d + weight(z, w);
      if (dist_[w] == kUnreached || nd < dist_[w]) {
        dist_[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  // Tentative distances of unsettled vertices are not final; hide them.
  for (Vertex v = 0; v < g.n(); ++v)
    if (!settled_[v]) dist_[v] = kUnreached;
}

std::int64_t PathTree::weight(Vertex a, Vertex b) const {
  bool tree = h_->parent(a) == b || h_->parent(b) == a;
  return tree ? 1 : static_cast<std::int64_t>(g_->n());
}

std::vector<Vertex> PathTree::path_to(Vertex v) const {
  std::vector<Vertex> out;
  if (!reached(v)) return out;
  out.push_back(v);
  while (v != src_) {
    Vertex pred = kNoVertex;
    for (Vertex p : g_->neighbors(v)) {  // ascending, so the first hit is the lowest ID
      if (!settled_[p] || faulty_[p]) continue;
      if (dist_[p] + weight(p, v) == dist_[v]) {
        pred = p;
        break;
      }
    }
    v = pred;
    out.push_back(v);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<ReplacementPath> replacement_path(const Graph& g, const Hld& h, Vertex a, Vertex b,
                                                std::span<const Vertex> faults) {
  if (!g.contains(a) || !g.contains(b)) throw InputError("path endpoint out of range");
  for (Vertex x : faults) {
    if (!g.contains(x)) throw InputError("fault out of range");
    if (x == a || x == b) throw InputError("path endpoint is a fault");
  }
  PathTree pt(g, h, a, faults, b);
  if (!pt.reached(b)) return std::nullopt;
  return ReplacementPath{pt.path_to(b), pt.dist(b)};
}

PathMarks path_marks(const Hld& h, Vertex u, std::span<const Vertex> path) {
  PathMarks m;
  if (path.empty()) return m;
  Vertex p = h.parent(u);
  Vertex hp = h.heavy(p);
  for (Vertex v : path) {
    if (!h.is_ancestor(p, v)) m.ell = v;
    if (!m.q && h.is_ancestor(u, v)) m.q = v;
    if (h.is_ancestor(hp, v)) m.g = v;
  }
  return m;
}

namespace {

PathMarks marks_for(const Graph& g, const Hld& h, Vertex u) {
  if (!h.in_tree(u) || h.is_root(u)) return {};
  Vertex p = h.parent(u);
  Vertex s = h.root_of(u);
  if (p == s) return {};  // the source itself is the fault
  Vertex f[1] = {p};
  PathTree pt(g, h, s, f, u);
  auto path = pt.path_to(u);
  return path_marks(h, u, path);
}

}  // namespace

std::optional<Vertex> vertex_ell(const Graph& g, const Hld& h, Vertex a) { return marks_for(g, h, a).ell; }
std::optional<Vertex> vertex_q(const Graph& g, const Hld& h, Vertex u) { return marks_for(g, h, u).q; }
std::optional<Vertex> vertex_g(const Graph& g, const Hld& h, Vertex u) { return marks_for(g, h, u).g; }

std::optional<Vertex> vertex_f(const Graph& g, const Hld& h, Vertex a) {
  if (!h.in_tree(a) || h.is_root(a)) return std::nullopt;
  Vertex p = h.parent(a);
  Vertex s = h.root_of(a);
  if (p == s) return std::nullopt;
  Vertex f[1] = {p};
  PathTree pt(g, h, a, f, s);
  for (Vertex v : pt.path_to(s))
    if (h.is_strict_ancestor(v, p)) return v;
  return std::nullopt;
}

std::optional<Vertex> alpha_with(Explorer& ex, const Hld& h, Vertex u) {
  ex.clear_blocks();
  ex.block_all(h.subtree(u));
  ex.block(h.parent(u));
  std::optional<Vertex> lca;
  for (Vertex v : ex.reach_internal(h.root_of(u)))
    if (h.is_ancestor(u, v)) lca = lca ? h.lca(*lca, v) : v;
  return lca;
}

AlphaResult alpha(const Graph& g, const Hld& h, Vertex u) {
  AlphaResult r;
  if (!h.in_tree(u) || h.is_root(u)) return r;
  Explorer ex(g);
  ex.block_all(h.subtree(u));
  ex.block(h.parent(u));
  for (Vertex v : ex.reach_internal(h.root_of(u)))
    if (h.is_ancestor(u, v)) r.members.push_back(v);
  std::sort(r.members.begin(), r.members.end());
  for (Vertex v : r.members) r.alpha = r.alpha ? h.lca(*r.alpha, v) : v;
  return r;
}

namespace {

// Reached vertices of T[s,par(u)) from u, with T[s,par(u)] blocked: (deepest, highest).
std::pair<std::optional<Vertex>, std::optional<Vertex>> beta_and_a(const Graph& g, const Hld& h, Vertex u) {
  if (!h.in_tree(u) || h.is_root(u)) return {};
  Explorer ex(g);
  Vertex p = h.parent(u);
  for (Vertex v = p; v != kNoVertex; v = h.parent(v)) ex.block(v);
  std::optional<Vertex> deep, high;
  for (Vertex v : ex.reach_internal(u)) {
    if (!h.is_strict_ancestor(v, p)) continue;
    if (!deep || h.depth(v) > h.depth(*deep)) deep = v;
    if (!high || h.depth(v) < h.depth(*high)) high = v;
  }
  return {deep, high};
}

}  // namespace

std::optional<Vertex> beta(const Graph& g, const Hld& h, Vertex u) { return beta_and_a(g, h, u).first; }
std::optional<Vertex> vertex_a(const Graph& g, const Hld& h, Vertex u) { return beta_and_a(g, h, u).second; }

std::optional<Vertex> vertex_c_with(Explorer& ex, const Hld& h, Vertex u) {
  Vertex hu = h.heavy(u);
  if (hu == kNoVertex) return std::nullopt;
  ex.clear_blocks();
  for (Vertex v = u; v != kNoVertex; v = h.parent(v)) ex.block(v);
  std::optional<Vertex> deep;
  for (Vertex v : ex.reach_internal(hu))
    if (h.is_strict_ancestor(v, u) && (!deep || h.depth(v) > h.depth(*deep))) deep = v;
  return deep;
}

std::optional<Vertex> vertex_c(const Graph& g, const Hld& h, Vertex u) {
  Explorer ex(g);
  return vertex_c_with(ex, h, u);
}

std::optional<Vertex> vertex_b_with(Explorer& ex, const Hld& h, Vertex u, Vertex path_top) {
  Vertex leaf = h.path_leaf(path_top);
  if (!h.is_ancestor(u, leaf)) throw InputError("vertex_b: u is not on the extended heavy path");
  ex.clear_blocks();
  for (Vertex v = leaf; v != h.parent(u); v = h.parent(v)) ex.block(v);
  std::optional<Vertex> high;
  for (Vertex v : ex.reach_internal(h.root_of(u)))
    if (v != u && h.is_strict_ancestor(u, v) && h.is_ancestor(v, leaf) && (!high || h.depth(v) < h.depth(*high)))
      high = v;
  return high;
}

std::optional<Vertex> vertex_b(const Graph& g, const Hld& h, Vertex u, Vertex path_top) {
  Explorer ex(g);
  return vertex_b_with(ex, h, u, path_top);
}

std::optional<Vertex> vertex_d_with(Explorer& ex, const Hld& h, Vertex u, Vertex path_top) {
  ex.clear_blocks();
  ex.block(u);
  for (Vertex v = path_top; v != kNoVertex; v = h.heavy(v))
    if (!h.is_strict_ancestor(v, u)) ex.block(v);
  std::optional<Vertex> deep;
  for (Vertex v : ex.reach_internal(h.root_of(u)))
    if (h.path_top(v) == path_top && (!deep || h.depth(v) > h.depth(*deep))) deep = v;
  return deep;
}

std::optional<Vertex> vertex_d(const Graph& g, const Hld& h, Vertex u, Vertex path_top) {
  Explorer ex(g);
  return vertex_d_with(ex, h, u, path_top);
}

std::vector<Vertex> analog_set(const Graph& g, const Hld& h, Vertex a, Vertex b) {
  std::vector<Vertex> out;
  if (!h.is_strict_ancestor(b, a)) throw InputError("analog_set: b must be a strict ancestor of a");
  Vertex hb = h.heavy(b);
  if (hb == kNoVertex) return out;
  if (h.is_ancestor(hb, a)) return {a};  // the empty path
  Explorer ex(g);
  ex.block_all(h.subtree(hb));
  ex.block(b);
  for (Vertex v : ex.reach_internal(a))
    if (h.is_ancestor(hb, v)) out.push_back(v);
  std::sort(out.begin(), out.end());
  if (out.size() > 2) out.resize(2);
  return out;
}

std::vector<Vertex> paths_on(const Hld& h, Vertex from, Vertex to) {
  std::vector<Vertex> out;
  Vertex v = to;
  while (h.depth(h.path_top(v)) > h.depth(from)) {
    out.push_back(h.path_top(v));
    v = h.parent(h.path_top(v));
  }
  out.push_back(h.path_top(from));
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace ftl
