#include "ftl/vft2.hpp"

#include <utility>

#include "ftl/error.hpp"
#include "ftl/label_io.hpp"
#include "ftl/tables.hpp"

namespace ftl {

// ---------------------------------------------------------------- serialization

void write_label(BitWriter& w, const LabelP& l) {
  w.put_count(l.entries.size());
  for (const auto& e : l.entries) {
    w.put_vertex(e.parent);
    put_opt_eid(w, e.ell);
    w.put_count(e.subs.size());
    for (const auto& s : e.subs) {
      w.put_opt_vertex(s.cid == kNoVertex ? std::nullopt : std::optional<Vertex>(s.cid));
      w.put_bit(s.conn_hb);
      w.put_bit(s.conn_hc);
    }
  }
}

LabelP read_label_p(BitReader& r) {
  LabelP l;
  l.entries.resize(r.get_count());
  for (auto& e : l.entries) {
    e.parent = r.get_vertex();
    e.ell = get_opt_eid(r);
    e.subs.resize(r.get_count());
    for (auto& s : e.subs) {
      s.cid = r.get_opt_vertex().value_or(kNoVertex);
      s.conn_hb = r.get_bit();
      s.conn_hc = r.get_bit();
    }
  }
  return l;
}

void write_label(BitWriter& w, const LabelAh& l) {
  put_eid(w, l.owner);
  w.put_count(l.entries.size());
  for (const auto& e : l.entries) {
    w.put_vertex(e.parent);
    put_opt_eid(w, e.f);
    w.put_bit(e.conn_par);
    w.put_opt_vertex(e.cid_path == kNoVertex ? std::nullopt : std::optional<Vertex>(e.cid_path));
  }
}

LabelAh read_label_ah(BitReader& r) {
  LabelAh l;
  l.owner = get_eid(r);
  l.entries.resize(r.get_count());
  for (auto& e : l.entries) {
    e.parent = r.get_vertex();
    e.f = get_opt_eid(r);
    e.conn_par = r.get_bit();
    e.cid_path = r.get_opt_vertex().value_or(kNoVertex);
  }
  return l;
}

void write_label(BitWriter& w, const LabelDep& l) {
  write_label(w, l.ah);
  w.put_count(l.entries.size());
  for (const auto& e : l.entries) {
    w.put_vertex(e.parent);
    w.put_bit(e.sub.has_value());
    if (e.sub) write_label(w, *e.sub);
    w.put_count(e.anset.size());
    for (const auto& a : e.anset) write_label(w, a);
    w.put_opt_vertex(e.cid_outside == kNoVertex ? std::nullopt : std::optional<Vertex>(e.cid_outside));
  }
}

LabelDep read_label_dep(BitReader& r) {
  LabelDep l;
  l.ah = read_label_ah(r);
  l.entries.resize(r.get_count());
  for (auto& e : l.entries) {
    e.parent = r.get_vertex();
    if (r.get_bit()) e.sub = read_label1(r);
    e.anset.resize(r.get_count());
    for (auto& a : e.anset) a = read_label_ah(r);
    e.cid_outside = r.get_opt_vertex().value_or(kNoVertex);
  }
  return l;
}

void write_label(BitWriter& w, const Label2Vft& l) {
  write_label(w, l.one);
  write_label(w, l.source_one);
  write_label(w, l.ss2);
  write_label(w, l.p);
  write_label(w, l.dep);
}

Label2Vft read_label_2vft(BitReader& r) {
  Label2Vft l;
  l.one = read_label1(r);
  l.source_one = read_label1(r);
  l.ss2 = read_label_ss2(r);
  l.p = read_label_p(r);
  l.dep = read_label_dep(r);
  return l;
}

// ---------------------------------------------------------------- encoding

namespace {

LabelAh ah_label(const Hld& h, const FaultTables& t, Vertex a) {
  LabelAh l;
  l.owner = h.eid(a);
  for (Vertex c : h.interesting(a)) {
    const auto& cf = t.child[c];
    l.entries.push_back({h.parent(c), h.eid_opt(cf.f), cf.conn_par, cf.cid_path});
  }
  return l;
}

LabelP p_label(const Hld& h, const FaultTables& t, Vertex a) {
  LabelP l;
  for (Vertex c : h.interesting(a)) {
    const auto& cf = t.child[c];
    PEntry e{h.parent(c), h.eid_opt(cf.ell), {}};
    for (const auto& ps : cf.psubs) e.subs.push_back({ps.cid, ps.conn_hb, ps.conn_hc});
    l.entries.push_back(std::move(e));
  }
  return l;
}

LabelDep dep_label(const Hld& h, const FaultTables& t, const std::vector<LabelAh>& ah, Vertex a) {
  LabelDep l;
  l.ah = ah[a];
  Vertex ha = h.heavy(a);
  for (Vertex c : h.interesting(a)) {
    DepEntry e;
    e.parent = h.parent(c);
    if (c == ha) {
      e.sub = t.child[c].sub_1vft;
    } else {
      const auto& af = t.ancestors[a][h.nl(c) - 1];
      e.sub = af.sub_1vft;
      for (Vertex m : af.anset) e.anset.push_back(ah[m]);
      e.cid_outside = af.cid_outside;
    }
    l.entries.push_back(std::move(e));
  }
  return l;
}

}  // namespace

std::vector<Label2Vft> encode_2vft(const Graph& g, const Hld& h, const EncodeOptions& opt) {
  const Vertex n = g.n();
  FaultTables t = build_fault_tables(g, h, true, opt);
  auto ss2 = assemble_ss2(h, t, true, opt);
  std::vector<char> conn_s(n, 0);
  std::vector<Vertex> cid(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    conn_s[v] = t.child[v].conn_s;
    cid[v] = t.child[v].cid;
  }
  auto comp = components(g);
  std::vector<LabelAh> ah(n);
#pragma omp parallel for schedule(dynamic, 64) if (opt.parallel)
  for (Vertex a = 0; a < n; ++a) ah[a] = ah_label(h, t, a);
  std::vector<Label2Vft> out(n);
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
  for (Vertex a = 0; a < n; ++a) {
    auto& l = out[a];
    l.one = make_label1(h, a, t.instance, comp.cid[a], conn_s, cid);
    Vertex s = h.root_of(a);
    l.source_one = make_label1(h, s, t.instance, comp.cid[s], conn_s, cid);
    l.ss2 = std::move(ss2[a]);
    l.p = p_label(h, t, a);
    l.dep = dep_label(h, t, ah, a);
  }
  return out;
}

std::vector<Label2Vft> encode_2vft(const Graph& g, const EncodeOptions& opt, bool use_certificate) {
  if (!use_certificate) {
    Hld h(g);
    return encode_2vft(g, h, opt);
  }
  Graph c = sparse_certificate(g, 3);
  Hld h(c);
  return encode_2vft(c, h, opt);
}

// ---------------------------------------------------------------- decoding

namespace {

// The entry for b = x and the child of x toward w, found in w's label (light child) or in
// x's own label (heavy child). Null when x is not a strict ancestor of w.
template <class Entry>
const Entry* entry_below(const std::vector<Entry>& w_entries, const ExtendedId& wid,
                         const std::vector<Entry>& x_entries, const ExtendedId& xid) {
  const std::vector<Entry>* src = nullptr;
  switch (ancestry(xid, wid)) {
    case Ancestry::ancestor_light: src = &w_entries; break;
    case Ancestry::ancestor_heavy: src = &x_entries; break;
    default: return nullptr;
  }
  std::size_t i = static_cast<std::size_t>(xid.nl);
  if (i >= src->size() || (*src)[i].parent != xid.id) throw LabelError("2-VFT label lacks the entry for a failed ancestor");
  return &(*src)[i];
}

const PSub& sub_at(const PEntry& e, const ExtendedId& c) {
  std::size_t i = static_cast<std::size_t>(c.nl);
  if (i >= e.subs.size()) throw LabelError("property (P) entry too short");
  return e.subs[i];
}

}  // namespace

PAnswer decode_property_p(const LabelP& w, const ExtendedId& wid, const LabelP& x, const ExtendedId& xid,
                          const LabelP& y, const ExtendedId& yid, Coverage* cov) {
  bool x_above = is_strict_ancestor(xid, wid);
  bool y_above = is_strict_ancestor(yid, wid);
  if (x_above == y_above) throw LabelError("property (P) needs exactly one failed ancestor");
  // Work with X above w and Y elsewhere; swap back at the end.
  const LabelP& lx = x_above ? x : y;
  const LabelP& ly = x_above ? y : x;
  const ExtendedId& X = x_above ? xid : yid;
  const ExtendedId& Y = x_above ? yid : xid;
  const PEntry* e = entry_below(w.entries, wid, lx.entries, X);
  if (!e->ell) throw LabelError("property (P) entry lacks its ell vertex");
  bool to_hX = false, to_hY = false;
  std::optional<Vertex> cid;
  if (in_upper_interesting(Y, *e->ell)) {
    mark(cov, Branch::p_case1);
    const PSub& s = sub_at(*e, Y);
    to_hX = s.conn_hb;
    to_hY = s.conn_hc;
    cid = s.cid;
  } else {
    // T[h(Y),ell] then the tail of the replacement path joins w to h(Y); rerun from h(Y).
    mark(cov, Branch::p_case2_direct);
    to_hY = true;
    if (!Y.heavy || ly.entries.size() <= static_cast<std::size_t>(Y.nl))
      throw LabelError("property (P) rerun lacks the heavy entry");
    const PEntry& e2 = ly.entries[Y.nl];
    if (e2.parent != Y.id || !e2.ell) throw LabelError("property (P) rerun entry is malformed");
    if (in_upper_interesting(X, *e2.ell)) {
      mark(cov, Branch::p_case2_rerun_bit);
      const PSub& s = sub_at(e2, X);
      to_hX = s.conn_hc;
      cid = s.cid;
    } else {
      mark(cov, Branch::p_case2_rerun_connected);
      to_hX = true;
    }
  }
  PAnswer a;
  a.to_hx = x_above ? to_hX : to_hY;
  a.to_hy = x_above ? to_hY : to_hX;
  a.cid = cid;
  return a;
}

bool decode_ah(const LabelAh& u, const LabelAh& v, const LabelAh& x, const LabelAh& y, Coverage* cov) {
  const ExtendedId& yid = y.owner;
  bool ub = is_strict_ancestor(yid, u.owner);
  bool vb = is_strict_ancestor(yid, v.owner);
  if (!ub && !vb) {
    mark(cov, Branch::ah_case1);
    return true;
  }
  // w and par(y): joined unless f_{y'} = x with the stored bit off, or y' has no f at all.
  auto to_parent = [&](const LabelAh& w, Vertex& cid) {
    const AhEntry* e = entry_below(w.entries, w.owner, y.entries, yid);
    cid = e->cid_path;
    if (!e->f) return false;
    if (e->f->id == x.owner.id) return e->conn_par;
    return true;
  };
  Vertex cu = kNoVertex, cv = kNoVertex;
  if (ub != vb) {
    mark(cov, Branch::ah_case2);
    return to_parent(ub ? u : v, cu);
  }
  bool pu = to_parent(u, cu);
  bool pv = to_parent(v, cv);
  if (pu || pv) {
    mark(cov, Branch::ah_case3_parent);
    return pu && pv;
  }
  if (cu == cv) {
    mark(cov, Branch::ah_case3_cid_equal);
    return true;
  }
  mark(cov, Branch::ah_claim38_disconnected);
  return false;
}

bool decode_ind(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y, Coverage* cov) {
  for (const auto* w : {&u, &v})
    for (const auto* f : {&x, &y})
      if (!decode_1vft(w->one, w->source_one, f->one)) {
        mark(cov, Branch::ind_c3_violated);
        return true;
      }
  PAnswer ru = decode_property_p(u.p, u.owner(), x.p, x.owner(), y.p, y.owner(), cov);
  PAnswer rv = decode_property_p(v.p, v.owner(), x.p, x.owner(), y.p, y.owner(), cov);
  if ((ru.to_hx && rv.to_hx) || (ru.to_hy && rv.to_hy)) return true;
  if (ru.to_hx != rv.to_hx || ru.to_hy != rv.to_hy) return false;
  if (!ru.cid || !rv.cid) throw LabelError("property (P) left a component unresolved");
  return *ru.cid == *rv.cid;
}

namespace {

const DepEntry& dep_entry(const Label2Vft& w, const ExtendedId& xid) {
  std::size_t i = static_cast<std::size_t>(xid.nl);
  if (i >= w.dep.entries.size() || w.dep.entries[i].parent != xid.id)
    throw LabelError("dependent-case label lacks the entry for a failed ancestor");
  return w.dep.entries[i];
}

const Label1Vft& sub_of(const DepEntry& e) {
  if (!e.sub) throw LabelError("dependent-case entry lacks its subgraph label");
  return *e.sub;
}

}  // namespace

bool decode_dep(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y, Coverage* cov) {
  const ExtendedId& xid = x.owner();
  const ExtendedId& yid = y.owner();
  if (is_light_ancestor(xid, yid)) {
    mark(cov, Branch::dep_light_ancestor);
    // u itself when it hangs off a light child of x, else h(x); both xy-connected to u.
    auto tilde = [&](const Label2Vft& w) -> const Label1Vft& {
      switch (ancestry(xid, w.owner())) {
        case Ancestry::ancestor_light: return sub_of(dep_entry(w, xid));
        case Ancestry::ancestor_heavy: return sub_of(dep_entry(x, xid));
        default: throw LabelError("dependent case with a query vertex outside T_x");
      }
    };
    return decode_1vft(tilde(u), tilde(v), sub_of(dep_entry(y, xid)));
  }
  // Analogs inside T_{h(x)}: w itself on the heavy side, else an AnSet member other than y.
  bool replaced = false;
  auto analog = [&](const Label2Vft& w) -> const LabelAh* {
    switch (ancestry(xid, w.owner())) {
      case Ancestry::ancestor_heavy: return &w.dep.ah;
      case Ancestry::ancestor_light:
        for (const auto& c : dep_entry(w, xid).anset)
          if (c.owner.id != yid.id) {
            replaced = true;
            return &c;
          }
        return nullptr;
      default: throw LabelError("dependent case with a query vertex outside T_x");
    }
  };
  const LabelAh* uh = analog(u);
  const LabelAh* vh = analog(v);
  if (!uh || !vh) {
    // (C4): a sealed side only reaches vertices outside T+_{h(x)}.
    const Label2Vft& other = uh ? u : v;
    if (ancestry(xid, other.owner()) == Ancestry::ancestor_heavy) {
      mark(cov, Branch::dep_c4_inside);
      return false;
    }
    mark(cov, Branch::dep_c4_cid);
    return dep_entry(u, xid).cid_outside == dep_entry(v, xid).cid_outside;
  }
  if (replaced) mark(cov, Branch::dep_analog);
  return decode_ah(*uh, *vh, x.dep.ah, y.dep.ah, cov);
}

bool decode_2vft(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y, Coverage* cov) {
  if (u.instance() != v.instance() || u.instance() != x.instance() || u.instance() != y.instance())
    throw LabelError("2-VFT labels from different instances");
  const Vertex ui = u.owner().id, vi = v.owner().id, xi = x.owner().id, yi = y.owner().id;
  if (ui == xi || ui == yi || vi == xi || vi == yi) return false;
  if (ui == vi) return true;
  if (u.base() != v.base()) return false;
  if (xi == yi) return decode_1vft(u.one, v.one, x.one);
  // Faults in other components do not matter.
  bool x_in = x.base() == u.base();
  bool y_in = y.base() == u.base();
  if (!x_in && !y_in) return true;
  if (!x_in) return decode_1vft(u.one, v.one, y.one);
  if (!y_in) return decode_1vft(u.one, v.one, x.one);
  if (!decode_1vft(u.one, v.one, x.one) || !decode_1vft(u.one, v.one, y.one)) {
    mark(cov, Branch::c1_violated);
    return false;
  }
  bool su = decode_ss2(u.ss2, x.ss2, y.ss2, cov);
  bool sv = decode_ss2(v.ss2, x.ss2, y.ss2, cov);
  if (su && sv) {
    mark(cov, Branch::c2_both_connected);
    return true;
  }
  if (su != sv) {
    mark(cov, Branch::c2_split);
    return false;
  }
  if (is_strict_ancestor(x.owner(), y.owner())) return decode_dep(u, v, x, y, cov);
  if (is_strict_ancestor(y.owner(), x.owner())) return decode_dep(u, v, y, x, cov);
  return decode_ind(u, v, x, y, cov);
}

}  // namespace ftl
