#include "ftl/vft1.hpp"

#include "ftl/error.hpp"
#include "ftl/label_io.hpp"
#include "ftl/traverse.hpp"

namespace ftl {

void write_label(BitWriter& w, const Label1Vft& l) {
  w.put_excluded(l.instance, 64);
  put_eid(w, l.owner);
  w.put_vertex(l.base);
  w.put_count(l.entries.size());
  for (const auto& e : l.entries) {
    put_eid(w, e.parent);
    put_eid(w, e.child);
    w.put_bit(e.conn_s);
    w.put_vertex(e.cid);
  }
}

Label1Vft read_label1(BitReader& r) {
  Label1Vft l;
  l.instance = r.get(64);
  l.owner = get_eid(r);
  l.base = r.get_vertex();
  l.entries.resize(r.get_count());
  for (auto& e : l.entries) {
    e.parent = get_eid(r);
    e.child = get_eid(r);
    e.conn_s = r.get_bit();
    e.cid = r.get_vertex();
  }
  return l;
}

SingleFaultTable single_fault_table(const Graph& g, const Hld& h, const EncodeOptions& opt) {
  const Vertex n = g.n();
  SingleFaultTable t{std::vector<char>(n, 0), std::vector<Vertex>(n, kNoVertex)};
#pragma omp parallel if (opt.parallel)
  {
    Explorer ex(g);
    std::vector<Vertex> lab;
#pragma omp for schedule(dynamic, 16)
    for (Vertex b = 0; b < n; ++b) {
      if (h.children(b).empty()) continue;
      ex.clear_blocks();
      ex.block(b);
      ex.label_components(lab);
      Vertex root = h.root_of(b);
      for (Vertex c : h.children(b)) {
        t.cid[c] = lab[c];
        t.conn_s[c] = root != b && lab[c] == lab[root];
      }
    }
  }
  return t;
}

Label1Vft make_label1(const Hld& h, Vertex a, std::uint64_t instance, Vertex base,
                      std::span<const char> conn_s, std::span<const Vertex> cid) {
  Label1Vft l;
  l.instance = instance;
  l.owner = h.eid(a);
  l.base = base;
  for (Vertex c : h.interesting(a)) {
    Vertex b = h.parent(c);
    l.entries.push_back({h.eid(b), h.eid(c), conn_s[c] != 0, cid[c]});
  }
  return l;
}

std::vector<Label1Vft> encode_1vft(const Graph& g, const Hld& h, const EncodeOptions& opt) {
  auto table = single_fault_table(g, h, opt);
  auto comp = components(g);
  const std::uint64_t instance = g.fingerprint();
  std::vector<Label1Vft> out(g.n());
#pragma omp parallel for schedule(dynamic, 64) if (opt.parallel)
  for (Vertex a = 0; a < g.n(); ++a) out[a] = make_label1(h, a, instance, comp.cid[a], table.conn_s, table.cid);
  return out;
}

SourceAnswer decode_source(const Label1Vft& w, const Label1Vft& x) {
  if (w.instance != x.instance) throw LabelError("1-VFT labels from different instances");
  if (w.base != x.base || !is_strict_ancestor(x.owner, w.owner)) return {true, std::nullopt};
  for (const auto* l : {&w, &x})
    for (const auto& e : l->entries)
      if (e.parent.id == x.owner.id && is_ancestor(e.child, w.owner)) return {e.conn_s, e.cid};
  throw LabelError("1-VFT label lacks the entry for the failed ancestor");
}

bool decode_1vft(const Label1Vft& u, const Label1Vft& v, const Label1Vft& x) {
  if (u.instance != v.instance || u.instance != x.instance) throw LabelError("1-VFT labels from different instances");
  if (u.owner.id == x.owner.id || v.owner.id == x.owner.id) return false;
  if (u.owner.id == v.owner.id) return true;
  if (u.base != v.base) return false;
  SourceAnswer su = decode_source(u, x);
  SourceAnswer sv = decode_source(v, x);
  if (su.cid && sv.cid) return *su.cid == *sv.cid;
  if (su.cid) return su.connected;
  if (sv.cid) return sv.connected;
  return true;
}

}  // namespace ftl
