#include "ftl/eft.hpp"

#include <algorithm>

#include "ftl/error.hpp"

namespace ftl {

namespace {

bool same_sketch(const std::shared_ptr<const Sketch>& a, const std::shared_ptr<const Sketch>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// Pieces of T minus the failed tree edges: piece 0 holds the root, piece k+1 hangs below
// cut k. Cuts are kept sorted by preorder so the deepest containing cut is the last match.
struct Pieces {
  struct Cut {
    Vertex tin, tout;
    const Sketch* sub;
  };
  std::vector<Cut> cuts;

  std::size_t of(Vertex tin) const {
    std::size_t best = 0;
    for (std::size_t k = 0; k < cuts.size() && cuts[k].tin <= tin; ++k)
      if (tin < cuts[k].tout) best = k + 1;
    return best;
  }
  // Piece just above cut k.
  std::size_t above(std::size_t k) const {
    std::size_t best = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (cuts[k].tin < cuts[j].tout) best = j + 1;
    return best;
  }
};

struct Dsu {
  std::vector<std::size_t> p;
  explicit Dsu(std::size_t n) : p(n) {
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
  }
  std::size_t find(std::size_t a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
};

}  // namespace

bool operator==(const EftVertexLabel& a, const EftVertexLabel& b) {
  return a.spec == b.spec && a.id == b.id && a.tin == b.tin && a.base == b.base && same_sketch(a.subtree, b.subtree);
}

bool operator==(const EftEdgeLabel& a, const EftEdgeLabel& b) {
  return a.spec == b.spec && a.eid == b.eid && a.base == b.base && a.tree == b.tree && a.child_is_v == b.child_is_v &&
         a.child_tout == b.child_tout && same_sketch(a.subtree, b.subtree);
}

const EftEdgeLabel& EftLabels::edge_label(const Graph& g, Vertex a, Vertex b) const {
  Edge e{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
  if (it == g.edges().end() || *it != e) throw InputError("not an edge of the graph");
  return edge[static_cast<std::size_t>(it - g.edges().begin())];
}

EftLabels encode_eft(const Graph& g, const Hld& h, std::uint64_t seed, const EncodeOptions& opt, int c1) {
  const Vertex n = g.n();
  EftLabels out;
  out.params = make_params(std::max<Vertex>(n, 1), g.m(), seed, c1);
  const SchemeParams& p = out.params;
  auto comp = components(g);

  std::vector<std::shared_ptr<Sketch>> sub(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
  for (Vertex v = 0; v < n; ++v) sub[v] = std::make_shared<Sketch>(vertex_sketch(p, g, h, v));
  // Children before parents; XOR is order-free so the serial pass is the reference.
  const auto& order = h.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (!h.is_root(*it)) *sub[h.parent(*it)] ^= *sub[*it];

  out.vertex.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) out.vertex[v] = {p.spec, v, h.tin(v), comp.cid[v], sub[v]};

  out.edge.resize(g.m());
#pragma omp parallel for schedule(static) if (opt.parallel)
  for (std::size_t k = 0; k < g.m(); ++k) {
    const Edge& e = g.edges()[k];
    EftEdgeLabel& l = out.edge[k];
    l.spec = p.spec;
    l.eid = p.word(e.u, e.v, h.tin(e.u), h.tin(e.v));
    l.base = comp.cid[e.u];
    Vertex child = h.parent(e.v) == e.u ? e.v : (h.parent(e.u) == e.v ? e.u : kNoVertex);
    if (child != kNoVertex) {
      l.tree = true;
      l.child_is_v = child == e.v;
      l.child_tout = h.tout(child);
      l.subtree = sub[child];
    }
  }
  return out;
}

bool decode_eft(const EftVertexLabel& u, const EftVertexLabel& v, std::span<const EftEdgeLabel> failed) {
  if (u.spec != v.spec) throw LabelError("EFT labels from different schemes");
  for (const auto& e : failed)
    if (e.spec != u.spec) throw LabelError("EFT labels from different schemes");
  if (!u.subtree || !v.subtree) throw LabelError("EFT vertex label without sketch");
  if (u.id == v.id) return true;
  if (u.base != v.base) return false;

  const SchemeParams p = make_params(u.spec);
  std::vector<const EftEdgeLabel*> fs;
  for (const auto& e : failed) {
    if (e.base != u.base) continue;
    if (!p.valid(e.eid)) throw LabelError("malformed extended edge ID");
    if (e.tree && !e.subtree) throw LabelError("tree-edge label without sketch");
    fs.push_back(&e);
  }
  std::sort(fs.begin(), fs.end(), [](auto* a, auto* b) { return std::pair(a->eid.u, a->eid.v) < std::pair(b->eid.u, b->eid.v); });
  fs.erase(std::unique(fs.begin(), fs.end(), [](auto* a, auto* b) { return a->eid.u == b->eid.u && a->eid.v == b->eid.v; }),
           fs.end());

  Pieces pieces;
  for (auto* e : fs)
    if (e->tree) pieces.cuts.push_back({e->child_is_v ? e->eid.tin_v : e->eid.tin_u, e->child_tout, e->subtree.get()});
  std::sort(pieces.cuts.begin(), pieces.cuts.end(), [](const auto& a, const auto& b) { return a.tin < b.tin; });

  const std::size_t count = pieces.cuts.size() + 1;
  std::vector<Sketch> sk(count, Sketch(p.shape));
  for (std::size_t k = 0; k < pieces.cuts.size(); ++k) {
    sk[k + 1] ^= *pieces.cuts[k].sub;
    sk[pieces.above(k)] ^= *pieces.cuts[k].sub;
  }
  for (auto* e : fs) {
    std::size_t a = pieces.of(e->eid.tin_u), b = pieces.of(e->eid.tin_v);
    if (a == b) continue;
    sk[a].toggle(p, e->eid);
    sk[b].toggle(p, e->eid);
  }

  Dsu dsu(count);
  const std::size_t pu = pieces.of(u.tin), pv = pieces.of(v.tin);
  const auto scales = static_cast<std::size_t>(p.scales());
  std::vector<EdgeWord> acc(count * scales);
  for (int i = 0; i < p.units(); ++i) {
    if (dsu.find(pu) == dsu.find(pv)) return true;
    std::fill(acc.begin(), acc.end(), EdgeWord{});
    for (std::size_t k = 0; k < count; ++k) {
      auto row = sk[k].unit(i);
      EdgeWord* dst = &acc[dsu.find(k) * scales];
      for (std::size_t j = 0; j < scales; ++j) dst[j] ^= row[j];
    }
    std::vector<std::pair<std::size_t, std::size_t>> merges;
    for (std::size_t r = 0; r < count; ++r) {
      if (dsu.find(r) != r) continue;
      std::span<const EdgeWord> row(&acc[r * scales], scales);
      if (row[0].zero()) {
        // Scale 0 samples every edge: an empty cut means the component is final.
        if (r == dsu.find(pu) || r == dsu.find(pv)) return false;
        continue;
      }
      auto w = recover_edge(row, p);
      if (!w) continue;
      std::size_t a = pieces.of(w->tin_u), b = pieces.of(w->tin_v);
      if ((dsu.find(a) == r) != (dsu.find(b) == r)) merges.emplace_back(a, b);
    }
    for (auto [a, b] : merges) dsu.p[dsu.find(a)] = dsu.find(b);
  }
  return dsu.find(pu) == dsu.find(pv);
}

void write_label(BitWriter& w, const EftVertexLabel& l) {
  if (!l.subtree) throw LabelError("EFT vertex label without sketch");
  put_spec(w, l.spec);
  w.put_vertex(l.id);
  w.put_vertex(l.tin);
  w.put_vertex(l.base);
  write_sketch(w, *l.subtree, shape_of(l.spec));
}

EftVertexLabel read_eft_vertex(BitReader& r) {
  EftVertexLabel l;
  l.spec = get_spec(r);
  l.id = r.get_vertex();
  l.tin = r.get_vertex();
  l.base = r.get_vertex();
  l.subtree = std::make_shared<const Sketch>(read_sketch(r, shape_of(l.spec)));
  return l;
}

void write_label(BitWriter& w, const EftEdgeLabel& l) {
  put_spec(w, l.spec);
  SketchShape s = shape_of(l.spec);
  put_word(w, l.eid, s.uid_bits);
  w.put_vertex(l.base);
  w.put_bit(l.tree);
  if (!l.tree) return;
  if (!l.subtree) throw LabelError("tree-edge label without sketch");
  w.put_bit(l.child_is_v);
  w.put_vertex(l.child_tout);
  write_sketch(w, *l.subtree, s);
}

EftEdgeLabel read_eft_edge(BitReader& r) {
  EftEdgeLabel l;
  l.spec = get_spec(r);
  SketchShape s = shape_of(l.spec);
  l.eid = get_word(r, s.uid_bits);
  l.base = r.get_vertex();
  l.tree = r.get_bit();
  if (!l.tree) return l;
  l.child_is_v = r.get_bit();
  l.child_tout = r.get_vertex();
  l.subtree = std::make_shared<const Sketch>(read_sketch(r, s));
  return l;
}

}  // namespace ftl
