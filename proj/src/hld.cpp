#include "ftl/hld.hpp"

#include <algorithm>

#include "ftl/error.hpp"

namespace ftl {

Ancestry ancestry(const ExtendedId& a, const ExtendedId& b) {
  if (a.id == b.id) return Ancestry::equal;
  if (a.anc.contains(b.anc)) {
    if (a.heavy && a.heavy_anc.contains(b.anc)) return Ancestry::ancestor_heavy;
    return Ancestry::ancestor_light;
  }
  if (b.anc.contains(a.anc)) return Ancestry::descendant;
  return Ancestry::none;
}

namespace {

// One root per component: `first` (if any) for its own component, the lowest vertex elsewhere.
std::vector<Vertex> pick_roots(const Graph& g, Vertex first) {
  std::vector<Vertex> roots;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> queue;
  auto sweep = [&](Vertex r) {
    roots.push_back(r);
    seen[r] = 1;
    queue.assign(1, r);
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : g.neighbors(queue[h]))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
  };
  if (first != kNoVertex) sweep(first);
  for (Vertex r = 0; r < g.n(); ++r)
    if (!seen[r]) sweep(r);
  return roots;
}

}  // namespace

Hld::Hld(const Graph& g) { build(g, pick_roots(g, kNoVertex)); }

Hld::Hld(const Graph& g, Vertex source) {
  if (!g.contains(source)) throw InputError("source vertex out of range");
  build(g, pick_roots(g, source));
}

void Hld::build(const Graph& g, const std::vector<Vertex>& roots) {
  const Vertex n = g.n();
  root_.assign(n, kNoVertex);
  parent_.assign(n, kNoVertex);
  depth_.assign(n, 0);
  heavy_.assign(n, kNoVertex);
  size_.assign(n, 0);
  tin_.assign(n, 0);
  nl_.assign(n, 0);
  top_.assign(n, kNoVertex);
  leaf_.assign(n, kNoVertex);
  order_.clear();

  // BFS with ascending neighbour scan; children therefore arrive in ascending ID order.
  std::vector<std::vector<Vertex>> kids(n);
  for (Vertex r : roots) {
    std::size_t start = order_.size();
    root_[r] = r;
    order_.push_back(r);
    for (std::size_t h = start; h < order_.size(); ++h) {
      Vertex z = order_[h];
      for (Vertex w : g.neighbors(z)) {
        if (root_[w] != kNoVertex) continue;
        root_[w] = r;
        parent_[w] = z;
        depth_[w] = depth_[z] + 1;
        kids[z].push_back(w);
        order_.push_back(w);
      }
    }
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    Vertex v = *it;
    size_[v] += 1;
    if (parent_[v] != kNoVertex) size_[parent_[v]] += size_[v];
  }
  child_off_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    Vertex best = kNoVertex;
    for (Vertex c : kids[v])
      if (best == kNoVertex || size_[c] > size_[best]) best = c;  // ascending scan keeps the lower ID on ties
    heavy_[v] = best;
    if (best != kNoVertex) {
      auto pos = std::find(kids[v].begin(), kids[v].end(), best);
      std::rotate(kids[v].begin(), pos, pos + 1);
    }
    child_off_[v + 1] = child_off_[v] + kids[v].size();
  }
  child_list_.clear();
  child_list_.reserve(child_off_[n]);
  for (Vertex v = 0; v < n; ++v) child_list_.insert(child_list_.end(), kids[v].begin(), kids[v].end());

  // Preorder intervals, heavy child first: each child starts right after its older siblings.
  for (Vertex v : order_) {
    if (parent_[v] == kNoVertex) {
      tin_[v] = 0;
      nl_[v] = 0;
      top_[v] = v;
    }
    Vertex next = tin_[v] + 1;
    for (Vertex c : children(v)) {
      tin_[c] = next;
      next += size_[c];
      bool light = c != heavy_[v];
      nl_[c] = nl_[v] + (light ? 1 : 0);
      top_[c] = light ? c : top_[v];
    }
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    Vertex v = *it;
    if (heavy_[v] == kNoVertex) leaf_[top_[v]] = v;
  }
  pos_.assign(n, 0);
  pre_.assign(order_.size(), kNoVertex);
  Vertex base = 0;
  // Trees occupy consecutive blocks of pre_, in root order.
  std::vector<Vertex> block(n, 0);
  for (Vertex r : roots) {
    block[r] = base;
    base += size_[r];
  }
  for (Vertex v : order_) {
    pos_[v] = block[root_[v]] + tin_[v];
    pre_[pos_[v]] = v;
  }
}

ExtendedId Hld::eid(Vertex v) const {
  ExtendedId e;
  e.id = v;
  e.anc = {tin_[v], tout(v)};
  if (heavy_[v] != kNoVertex) {
    e.heavy = heavy_[v];
    e.heavy_anc = {tin_[heavy_[v]], tout(heavy_[v])};
  }
  e.nl = nl_[v];
  e.path = top_[v];
  return e;
}

std::vector<Vertex> Hld::interesting(Vertex a) const {
  std::vector<Vertex> out;
  for (Vertex v = a;;) {
    Vertex t = top_[v];
    if (parent_[t] == kNoVertex) break;
    out.push_back(t);
    v = parent_[t];
  }
  std::reverse(out.begin(), out.end());
  if (heavy_[a] != kNoVertex) out.push_back(heavy_[a]);
  return out;
}

std::vector<Vertex> Hld::upper_interesting(Vertex a) const {
  std::vector<Vertex> out;
  for (Vertex v = a;;) {
    Vertex t = top_[v];
    if (parent_[t] == kNoVertex) break;
    out.push_back(parent_[t]);
    v = parent_[t];
  }
  std::reverse(out.begin(), out.end());
  out.push_back(a);
  return out;
}

std::vector<Vertex> Hld::root_path(Vertex a) const {
  std::vector<Vertex> out;
  for (Vertex v = a; v != kNoVertex; v = parent_[v]) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Vertex> Hld::heavy_path(Vertex top) const {
  std::vector<Vertex> out;
  for (Vertex v = top; v != kNoVertex; v = heavy_[v]) out.push_back(v);
  return out;
}

Vertex Hld::child_on_path(Vertex a, Vertex b) const {
  if (!is_strict_ancestor(a, b)) throw InputError("child_on_path: not a strict ancestor");
  Vertex v = b;
  while (top_[v] != top_[a]) {
    Vertex t = top_[v];
    if (parent_[t] == a) return t;
    v = parent_[t];
  }
  return heavy_[a];
}

Vertex Hld::lca(Vertex a, Vertex b) const {
  if (root_[a] == kNoVertex || root_[a] != root_[b]) throw InputError("lca: vertices in different components");
  while (top_[a] != top_[b]) {
    if (depth_[top_[a]] > depth_[top_[b]])
      a = parent_[top_[a]];
    else
      b = parent_[top_[b]];
  }
  return depth_[a] < depth_[b] ? a : b;
}

}  // namespace ftl
