#include "ftl/ssvft.hpp"

#include <utility>

#include "ftl/error.hpp"
#include "ftl/label_io.hpp"
#include "ftl/tables.hpp"
#include "ftl/vft1.hpp"

namespace ftl {

// ---------------------------------------------------------------- serialization

void write_label(BitWriter& w, const LabelSs1f& l) {
  w.put_excluded(l.instance, 64);
  put_eid(w, l.owner);
  w.put_bit(l.reachable);
  w.put_bits(l.bits);
  w.put_bit(l.heavy_bit.has_value());
  if (l.heavy_bit) w.put_bit(*l.heavy_bit);
}

LabelSs1f read_label_ss1f(BitReader& r) {
  LabelSs1f l;
  l.instance = r.get(64);
  l.owner = get_eid(r);
  l.reachable = r.get_bit();
  l.bits = r.get_bits();
  if (r.get_bit()) l.heavy_bit = r.get_bit();
  return l;
}

namespace {

void put_down(BitWriter& w, const DownPart& d) {
  put_opt_eid(w, d.alpha);
  put_opt_eid(w, d.beta);
  w.put_bits(d.bits);
}
DownPart get_down(BitReader& r) {
  DownPart d;
  d.alpha = get_opt_eid(r);
  d.beta = get_opt_eid(r);
  d.bits = r.get_bits();
  return d;
}

void put_up(BitWriter& w, const UpPart& u) {
  put_opt_eid(w, u.a);
  w.put_bit(u.conn_a);
  w.put_bits(u.bits);
}
UpPart get_up(BitReader& r) {
  UpPart u;
  u.a = get_opt_eid(r);
  u.conn_a = r.get_bit();
  u.bits = r.get_bits();
  return u;
}

void put_marks(BitWriter& w, const std::vector<PathMark>& ms, bool with_conn) {
  w.put_count(ms.size());
  for (const auto& m : ms) {
    w.put_vertex(m.path);
    put_opt_eid(w, m.mark);
    if (with_conn) w.put_bit(m.conn);
  }
}
std::vector<PathMark> get_marks(BitReader& r, bool with_conn) {
  std::vector<PathMark> ms(r.get_count());
  for (auto& m : ms) {
    m.path = r.get_vertex();
    m.mark = get_opt_eid(r);
    if (with_conn) m.conn = r.get_bit();
  }
  return ms;
}

void put_tail(BitWriter& w, const UpTail& t) {
  put_opt_eid(w, t.c);
  put_opt_eid(w, t.q);
  put_marks(w, t.b_list, true);
}
UpTail get_tail(BitReader& r) {
  UpTail t;
  t.c = get_opt_eid(r);
  t.q = get_opt_eid(r);
  t.b_list = get_marks(r, true);
  return t;
}

void put_opt_ss1f(BitWriter& w, const std::optional<LabelSs1f>& l) {
  w.put_bit(l.has_value());
  if (l) write_label(w, *l);
}
std::optional<LabelSs1f> get_opt_ss1f(BitReader& r) {
  if (!r.get_bit()) return std::nullopt;
  return read_label_ss1f(r);
}

}  // namespace

void write_label(BitWriter& w, const LabelDPrime& l) {
  put_eid(w, l.owner);
  w.put_bit(l.heavy.has_value());
  if (l.heavy) put_down(w, *l.heavy);
}
LabelDPrime read_label_dprime(BitReader& r) {
  LabelDPrime l;
  l.owner = get_eid(r);
  if (r.get_bit()) l.heavy = get_down(r);
  return l;
}

void write_label(BitWriter& w, const LabelUPrime& l) {
  put_eid(w, l.owner);
  w.put_bit(l.heavy.has_value());
  if (l.heavy) put_up(w, *l.heavy);
  put_tail(w, l.tail);
}
LabelUPrime read_label_uprime(BitReader& r) {
  LabelUPrime l;
  l.owner = get_eid(r);
  if (r.get_bit()) l.heavy = get_up(r);
  l.tail = get_tail(r);
  return l;
}

void write_label(BitWriter& w, const LabelSs2& l) {
  w.put_excluded(l.instance, 64);
  put_eid(w, l.owner);
  w.put_bit(l.reachable);
  write_label(w, l.ss1);
  w.put_count(l.entries.size());
  for (const auto& e : l.entries) {
    put_eid(w, e.parent);
    put_eid(w, e.child);
    put_down(w, e.down);
    put_up(w, e.up);
    put_opt_ss1f(w, e.side.owner_sub);
    put_opt_ss1f(w, e.side.child_sub);
    put_opt_eid(w, e.side.g);
    w.put_bit(e.side.conn_g);
    if (e.side.g) {
      write_label(w, *e.side.g_down);
      write_label(w, *e.side.g_up);
    }
    w.put_bits(e.side.g_bits);
    put_opt_eid(w, e.in.ell);
    w.put_bits(e.in.bits);
  }
  put_tail(w, l.tail);
  put_marks(w, l.d_list, false);
}

LabelSs2 read_label_ss2(BitReader& r) {
  LabelSs2 l;
  l.instance = r.get(64);
  l.owner = get_eid(r);
  l.reachable = r.get_bit();
  l.ss1 = read_label_ss1f(r);
  l.entries.resize(r.get_count());
  for (auto& e : l.entries) {
    e.parent = get_eid(r);
    e.child = get_eid(r);
    e.down = get_down(r);
    e.up = get_up(r);
    e.side.owner_sub = get_opt_ss1f(r);
    e.side.child_sub = get_opt_ss1f(r);
    e.side.g = get_opt_eid(r);
    e.side.conn_g = r.get_bit();
    if (e.side.g) {
      e.side.g_down = read_label_dprime(r);
      e.side.g_up = read_label_uprime(r);
    }
    e.side.g_bits = r.get_bits();
    e.in.ell = get_opt_eid(r);
    e.in.bits = r.get_bits();
  }
  l.tail = get_tail(r);
  l.d_list = get_marks(r, false);
  return l;
}

// ---------------------------------------------------------------- encoding

LabelSs1f make_ss1f(const Hld& h, Vertex t, std::uint64_t instance, bool reachable, std::span<const char> conn) {
  LabelSs1f l;
  l.instance = instance;
  l.owner = h.eid(t);
  l.reachable = reachable;
  if (!reachable) return l;
  Vertex ht = h.heavy(t);
  for (Vertex c : h.interesting(t))
    if (c != ht) l.bits.push_back(conn[c] != 0);
  if (ht != kNoVertex) l.heavy_bit = conn[ht] != 0;
  return l;
}

namespace {

Vertex source_of(const Hld& h) { return h.order().empty() ? kNoVertex : h.order().front(); }

std::vector<char> conn_column(const FaultTables& t) {
  std::vector<char> out(t.child.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = t.child[v].conn_s;
  return out;
}

class Ss2Assembler {
 public:
  Ss2Assembler(const Hld& h, const FaultTables& t) : h_(h), t_(t), conn_(conn_column(t)) {}

  UpTail tail_for(Vertex v) const {
    UpTail tail;
    const auto& vf = t_.vertex[v];
    tail.c = h_.eid_opt(vf.c);
    Vertex hv = h_.heavy(v);
    if (hv != kNoVertex) tail.q = h_.eid_opt(t_.child[hv].q);
    for (const auto& m : vf.b_list) tail.b_list.push_back({m.path, h_.eid_opt(m.b), m.conn});
    return tail;
  }

  DownPart down_for(Vertex c) const {
    const auto& cf = t_.child[c];
    return {h_.eid_opt(cf.alpha), h_.eid_opt(cf.beta), cf.down_bits};
  }
  UpPart up_for(Vertex c) const {
    const auto& cf = t_.child[c];
    return {h_.eid_opt(cf.a), cf.conn_a, cf.up_bits};
  }

  LabelDPrime dprime_for(Vertex v) const {
    LabelDPrime l{h_.eid(v), std::nullopt};
    if (h_.heavy(v) != kNoVertex) l.heavy = down_for(h_.heavy(v));
    return l;
  }
  LabelUPrime uprime_for(Vertex v) const {
    LabelUPrime l{h_.eid(v), std::nullopt, tail_for(v)};
    if (h_.heavy(v) != kNoVertex) l.heavy = up_for(h_.heavy(v));
    return l;
  }

  LabelSs2 label(Vertex a, Vertex source) const {
    LabelSs2 l;
    l.instance = t_.instance;
    l.owner = h_.eid(a);
    l.reachable = h_.root_of(a) == source;
    l.ss1 = make_ss1f(h_, a, t_.instance, l.reachable, conn_);
    if (!l.reachable) return l;
    Vertex ha = h_.heavy(a);
    for (Vertex c : h_.interesting(a)) {
      const auto& cf = t_.child[c];
      Ss2Entry e;
      e.parent = h_.eid(h_.parent(c));
      e.child = h_.eid(c);
      e.down = down_for(c);
      e.up = up_for(c);
      if (c != ha) e.side.owner_sub = t_.ancestors[a][h_.nl(c) - 1].sub_ss1;
      e.side.child_sub = cf.sub_ss1;
      e.side.g = h_.eid_opt(cf.g);
      e.side.conn_g = cf.conn_g;
      if (cf.g) {
        e.side.g_down = dprime_for(*cf.g);
        e.side.g_up = uprime_for(*cf.g);
      }
      e.side.g_bits = cf.g_bits;
      e.in = {h_.eid_opt(cf.ell), cf.in_bits};
      l.entries.push_back(std::move(e));
    }
    l.tail = tail_for(a);
    for (const auto& m : t_.vertex[a].d_list) l.d_list.push_back({m.path, h_.eid_opt(m.d), false});
    return l;
  }

 private:
  const Hld& h_;
  const FaultTables& t_;
  std::vector<char> conn_;
};

}  // namespace

std::vector<LabelSs1f> encode_ss1f(const Graph& g, const Hld& h, const EncodeOptions& opt) {
  auto table = single_fault_table(g, h, opt);
  const std::uint64_t inst = g.fingerprint();
  const Vertex s = source_of(h);
  std::vector<LabelSs1f> out(g.n());
#pragma omp parallel for schedule(dynamic, 64) if (opt.parallel)
  for (Vertex t = 0; t < g.n(); ++t) out[t] = make_ss1f(h, t, inst, h.root_of(t) == s, table.conn_s);
  return out;
}

std::vector<LabelSs2> assemble_ss2(const Hld& h, const FaultTables& tables, bool every_root, const EncodeOptions& opt) {
  Ss2Assembler asm_(h, tables);
  const Vertex s = source_of(h);
  std::vector<LabelSs2> out(h.n());
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
  for (Vertex t = 0; t < h.n(); ++t) out[t] = asm_.label(t, every_root ? h.root_of(t) : s);
  return out;
}

std::vector<LabelSs2> encode_ss2(const Graph& g, const Hld& h, const EncodeOptions& opt) {
  return assemble_ss2(h, build_fault_tables(g, h, false, opt), false, opt);
}

LabelDPrime dprime_of(const LabelSs2& l) {
  LabelDPrime d{l.owner, std::nullopt};
  if (l.owner.heavy && !l.entries.empty() && l.entries.back().child.id == *l.owner.heavy) d.heavy = l.entries.back().down;
  return d;
}

LabelUPrime uprime_of(const LabelSs2& l) {
  LabelUPrime u{l.owner, std::nullopt, l.tail};
  if (l.owner.heavy && !l.entries.empty() && l.entries.back().child.id == *l.owner.heavy) u.heavy = l.entries.back().up;
  return u;
}

// ---------------------------------------------------------------- decoding

bool decode_ss1f(const LabelSs1f& t, const LabelSs1f& x) {
  if (t.instance != x.instance) throw LabelError("single-source labels from different instances");
  if (t.owner.id == x.owner.id) return false;
  if (!t.reachable) return false;
  if (!x.reachable) return true;
  if (is_root(x.owner)) return false;
  switch (ancestry(x.owner, t.owner)) {
    case Ancestry::ancestor_heavy:
      if (!x.heavy_bit) throw LabelError("single-source label lacks its heavy bit");
      return *x.heavy_bit;
    case Ancestry::ancestor_light:
      if (static_cast<std::size_t>(x.owner.nl) >= t.bits.size()) throw LabelError("single-source bitstring too short");
      return t.bits[x.owner.nl];
    default:
      return true;
  }
}

namespace {

bool bit_at(const std::vector<bool>& bits, Vertex index) {
  if (index < 0 || static_cast<std::size_t>(index) >= bits.size()) throw LabelError("bitstring index out of range");
  return bits[index];
}

bool strictly_between(const ExtendedId& top, const ExtendedId& v, const ExtendedId& bottom) {
  return is_strict_ancestor(top, v) && is_strict_ancestor(v, bottom);
}

// Entry for the child of `parent` toward `below`, looked up in either label.
const Ss2Entry* find_entry(const LabelSs2& a, const LabelSs2& b, Vertex parent, const ExtendedId& below) {
  for (const auto* l : {&a, &b})
    for (const auto& e : l->entries)
      if (e.parent.id == parent && is_ancestor(e.child, below)) return &e;
  return nullptr;
}

const PathMark* find_mark(const std::vector<PathMark>& ms, Vertex path) {
  for (const auto& m : ms)
    if (m.path == path) return &m;
  return nullptr;
}

// y in T_{x'} where x' is the child of x toward t; xp is the Down part of x'.
bool down_case(const ExtendedId& x, const ExtendedId& y, const DownPart& xp, const DownPart* y_heavy, Coverage* cov) {
  if (!xp.alpha) {
    mark(cov, Branch::ss2_down_disconnected);
    return false;
  }
  const ExtendedId& al = *xp.alpha;
  if (!is_ancestor(y, al)) {
    mark(cov, Branch::ss2_down_alpha_outside);
    return true;
  }
  if (in_upper_interesting(y, al)) {
    mark(cov, Branch::ss2_down_alpha_bit);
    return bit_at(xp.bits, y.nl);
  }
  if (y_heavy && y_heavy->beta && strictly_between(x, *y_heavy->beta, y)) {
    mark(cov, Branch::ss2_down_beta_between);
    return true;
  }
  mark(cov, Branch::ss2_down_disconnected);
  return false;
}

// y strictly above x; xp is the Up part of x'.
bool up_case(const ExtendedId& x, const ExtendedId& y, const UpPart& xp, const UpTail& y_tail, const UpTail& x_tail,
             Coverage* cov) {
  if (is_light_ancestor(y, x)) {
    mark(cov, Branch::ss2_up_bit);
    return bit_at(xp.bits, y.nl);
  }
  if (!xp.a) {
    mark(cov, Branch::ss2_up_disconnected);
    return false;
  }
  if (is_strict_ancestor(*xp.a, y)) {
    mark(cov, Branch::ss2_up_a_above);
    return true;
  }
  if (xp.a->id == y.id) {
    mark(cov, Branch::ss2_up_a_equal);
    return xp.conn_a;
  }
  if (!y_tail.q) {
    mark(cov, Branch::ss2_up_disconnected);
    return false;
  }
  if (!is_ancestor(x, *y_tail.q)) {
    mark(cov, Branch::ss2_up_q_outside);
    return true;
  }
  const PathMark* bm = find_mark(y_tail.b_list, x.path);
  if (!bm || !bm->mark) {
    mark(cov, Branch::ss2_up_disconnected);
    return false;
  }
  if (strictly_between(y, *bm->mark, x)) {
    mark(cov, Branch::ss2_up_b_between);
    return true;
  }
  if (bm->mark->id == x.id) {
    mark(cov, Branch::ss2_up_b_equal);
    return bm->conn;
  }
  if (x_tail.c && strictly_between(y, *x_tail.c, x)) {
    mark(cov, Branch::ss2_up_c_between);
    return true;
  }
  mark(cov, Branch::ss2_up_disconnected);
  return false;
}

const Ss2Entry* heavy_entry(const LabelSs2& l) {
  if (!l.owner.heavy || l.entries.empty() || l.entries.back().child.id != *l.owner.heavy) return nullptr;
  return &l.entries.back();
}

bool side_case(const LabelSs2& x, const LabelSs2& y, const Ss2Entry& xe, Coverage* cov) {
  const ExtendedId& xid = x.owner;
  const ExtendedId& yid = y.owner;
  if (is_light_ancestor(xid, yid)) {
    const Ss2Entry* ye = find_entry(y, y, xid.id, yid);
    if (!ye || !ye->side.owner_sub || !xe.side.child_sub) throw LabelError("side entry lacks its subgraph labels");
    mark(cov, Branch::ss2_side_light);
    return decode_ss1f(*xe.side.child_sub, *ye->side.owner_sub);
  }
  const SidePart& sp = xe.side;
  if (!sp.g) {
    mark(cov, Branch::ss2_side_g_null);
    return true;
  }
  const ExtendedId& g = *sp.g;
  if (g.id == yid.id) {
    mark(cov, Branch::ss2_side_g_equal);
    return sp.conn_g;
  }
  if (!is_ancestor(yid, g)) {
    mark(cov, Branch::ss2_side_down_prime);
    return decode_dprime(*sp.g_down, dprime_of(x), dprime_of(y));
  }
  if (in_upper_interesting(yid, g)) {
    mark(cov, Branch::ss2_side_g_bit);
    return bit_at(sp.g_bits, yid.nl);
  }
  mark(cov, Branch::ss2_side_up_prime);
  return decode_uprime(*sp.g_up, uprime_of(y), uprime_of(x));
}

bool independent_case(const LabelSs2& x, const LabelSs2& y, const Ss2Entry& xe, Coverage* cov) {
  const ExtendedId& xid = x.owner;
  const ExtendedId& yid = y.owner;
  if (!xe.in.ell) {
    mark(cov, Branch::ss2_ind_disconnected);
    return false;
  }
  const ExtendedId& ell = *xe.in.ell;
  if (!is_ancestor(yid, ell)) {
    mark(cov, Branch::ss2_ind_ell_outside);
    return true;
  }
  if (in_upper_interesting(yid, ell)) {
    mark(cov, Branch::ss2_ind_ell_bit);
    return bit_at(xe.in.bits, yid.nl);
  }
  // x' hangs on h(y); settle h(y).
  const Ss2Entry* hy = heavy_entry(y);
  if (!hy || !hy->in.ell) {
    mark(cov, Branch::ss2_ind_disconnected);
    return false;
  }
  if (!is_ancestor(xid, *hy->in.ell)) {
    mark(cov, Branch::ss2_ind_hy_outside);
    return true;
  }
  if (in_upper_interesting(xid, *hy->in.ell)) {
    mark(cov, Branch::ss2_ind_hy_bit);
    return bit_at(hy->in.bits, xid.nl);
  }
  // h(y) hangs on h(x); settle h(x).
  const Ss2Entry* hx = heavy_entry(x);
  if (!hx || !hx->in.ell) {
    mark(cov, Branch::ss2_ind_disconnected);
    return false;
  }
  if (!is_ancestor(yid, *hx->in.ell)) {
    mark(cov, Branch::ss2_ind_hx_outside);
    return true;
  }
  if (in_upper_interesting(yid, *hx->in.ell)) {
    mark(cov, Branch::ss2_ind_hx_bit);
    return bit_at(hx->in.bits, yid.nl);
  }
  // Both hang on each other: the source must reach one of the two heavy paths below the faults.
  const PathMark* dx = find_mark(x.d_list, yid.path);
  const PathMark* dy = find_mark(y.d_list, xid.path);
  bool in_b = (dx && dx->mark && is_strict_ancestor(yid, *dx->mark)) ||
              (dy && dy->mark && is_strict_ancestor(xid, *dy->mark));
  mark(cov, in_b ? Branch::ss2_ind_d_in_b : Branch::ss2_ind_disconnected);
  return in_b;
}

}  // namespace

bool decode_dprime(const LabelDPrime& /*t*/, const LabelDPrime& x, const LabelDPrime& y) {
  if (!x.heavy) throw LabelError("restricted down label lacks its heavy part");
  const DownPart* yh = y.heavy ? &*y.heavy : nullptr;
  return down_case(x.owner, y.owner, *x.heavy, yh, nullptr);
}

bool decode_uprime(const LabelUPrime& /*t*/, const LabelUPrime& x, const LabelUPrime& y) {
  if (!x.heavy) throw LabelError("restricted up label lacks its heavy part");
  return up_case(x.owner, y.owner, *x.heavy, y.tail, x.tail, nullptr);
}

bool decode_ss2(const LabelSs2& t, const LabelSs2& x, const LabelSs2& y, Coverage* cov) {
  if (t.instance != x.instance || t.instance != y.instance)
    throw LabelError("single-source labels from different instances");
  if (t.owner.id == x.owner.id || t.owner.id == y.owner.id) return false;
  if (!t.reachable) return false;
  if (x.owner.id == y.owner.id || !y.reachable) return decode_ss1f(t.ss1, x.ss1);
  if (!x.reachable) return decode_ss1f(t.ss1, y.ss1);
  if (is_root(x.owner) || is_root(y.owner)) return false;
  if (is_root(t.owner)) return true;
  if (!decode_ss1f(t.ss1, x.ss1) || !decode_ss1f(t.ss1, y.ss1)) {
    mark(cov, Branch::ss2_s1_reject);
    return false;
  }
  bool x_on = is_strict_ancestor(x.owner, t.owner);
  bool y_on = is_strict_ancestor(y.owner, t.owner);
  if (!x_on && !y_on) {
    mark(cov, Branch::ss2_off_path);
    return true;
  }
  const LabelSs2* lx = &x;
  const LabelSs2* ly = &y;
  if (!x_on || (y_on && is_strict_ancestor(x.owner, y.owner))) std::swap(lx, ly);
  const Ss2Entry* xe = find_entry(t, *lx, lx->owner.id, t.owner);
  if (!xe) throw LabelError("single-source label lacks the entry for the failed ancestor");
  const ExtendedId& xid = lx->owner;
  const ExtendedId& yid = ly->owner;
  if (is_ancestor(xe->child, yid)) {
    const Ss2Entry* yh = heavy_entry(*ly);
    return down_case(xid, yid, xe->down, yh ? &yh->down : nullptr, cov);
  }
  if (is_strict_ancestor(yid, xid)) return up_case(xid, yid, xe->up, ly->tail, lx->tail, cov);
  if (is_strict_ancestor(xid, yid)) return side_case(*lx, *ly, *xe, cov);
  return independent_case(*lx, *ly, *xe, cov);
}

}  // namespace ftl
