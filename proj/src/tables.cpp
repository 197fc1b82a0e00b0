#include "ftl/tables.hpp"

#include <algorithm>

#include "ftl/paths.hpp"
#include "ftl/traverse.hpp"

namespace ftl {

namespace {

enum class Kind : std::uint8_t { down, up, in, gbit, conn_a, conn_g, blist, psub, ah_parent, sub_table };

struct Request {
  Vertex w;     // the second fault, next to b
  Vertex who;   // child c, or b2 for sub_table
  Kind kind;
  std::int32_t slot;
};

// Per-thread scratch, sized once.
struct Workspace {
  explicit Workspace(const Graph& g)
      : ex(g), deep(g.n(), kNoVertex), high(g.n(), kNoVertex), low1(g.n(), kNoVertex), low2(g.n(), kNoVertex),
        sub_conn(g.n(), 0), sub_cid(g.n(), kNoVertex), mark(g.n(), 0) {}
  Explorer ex;
  std::vector<Vertex> lab_b, lab_path, lab_w, lab_an;
  std::vector<Vertex> deep, high, low1, low2;
  std::vector<char> sub_conn;
  std::vector<Vertex> sub_cid;
  std::vector<char> mark;
  std::vector<Request> req;
};

class ParentTask {
 public:
  ParentTask(const Graph& g, const Hld& h, bool all_pairs, FaultTables& out, Workspace& ws)
      : g_(g), h_(h), all_pairs_(all_pairs), out_(out), ws_(ws) {}

  void run(Vertex b) {
    b_ = b;
    s_ = h_.root_of(b);
    ws_.req.clear();
    for (Vertex c : h_.children(b_))
      if (c != h_.heavy(b_))
        for (Vertex t : h_.subtree(c)) out_.ancestors[t][h_.nl(c) - 1].b = b_;
    single_faults();
    path_marks_from_source();
    if (all_pairs_) f_vertices();
    root_path_components();
    alphas();
    vertex_facts();
    bit_requests();
    if (all_pairs_) analog_sets();
    bool subs = all_pairs_ || b_ != s_;
    std::optional<Graph> sub_graph;
    std::optional<Hld> sub_hld;
    std::vector<Vertex> needed;
    if (subs) {
      Vertex gone[1] = {b_};
      sub_graph.emplace(g_.without(gone));
      sub_hld.emplace(b_ != s_ ? Hld(*sub_graph, s_) : Hld(*sub_graph));
      needed = needed_vertices();
      sub_requests(*sub_hld, needed);
    }
    answer_requests(sub_hld ? &*sub_hld : nullptr);
    if (subs) sub_labels(*sub_graph, *sub_hld, needed);
  }

 private:
  ChildFacts& child(Vertex c) { return out_.child[c]; }
  void ask(Vertex w, Vertex who, Kind k, std::int32_t slot = 0) { ws_.req.push_back({w, who, k, slot}); }

  void single_faults() {
    auto& ex = ws_.ex;
    ex.clear_blocks();
    ex.block(b_);
    ex.label_components(ws_.lab_b);
    for (Vertex c : h_.children(b_)) {
      child(c).cid = ws_.lab_b[c];
      child(c).conn_s = b_ != s_ && ws_.lab_b[c] == ws_.lab_b[s_];
    }
  }

  // One Dijkstra from s with b failed gives P_{s,c,b} for every child c.
  void path_marks_from_source() {
    if (b_ == s_) return;
    Vertex f[1] = {b_};
    PathTree pt(g_, h_, s_, f);
    for (Vertex c : h_.children(b_)) {
      auto m = path_marks(h_, c, pt.path_to(c));
      child(c).ell = m.ell;
      child(c).q = m.q;
      child(c).g = m.g;
    }
  }

  void f_vertices() {
    if (b_ == s_) return;
    Vertex f[1] = {b_};
    for (Vertex c : h_.children(b_)) {
      PathTree pt(g_, h_, c, f, s_);
      for (Vertex v : pt.path_to(s_))
        if (h_.is_strict_ancestor(v, b_)) {
          child(c).f = v;
          break;
        }
    }
  }

  // Components of G - T[s,b]: beta (deepest) and a (highest) attachment on T[s,b), and CID.
  void root_path_components() {
    auto& ex = ws_.ex;
    auto kids = h_.children(b_);
    if (b_ == s_) {
      for (Vertex c : kids) child(c).cid_path = ws_.lab_b[c];
      return;
    }
    ex.clear_blocks();
    for (Vertex v = b_; v != kNoVertex; v = h_.parent(v)) ex.block(v);
    ex.label_components(ws_.lab_path);
    std::vector<Vertex> touched;
    for (Vertex v = h_.parent(b_); v != kNoVertex; v = h_.parent(v))
      for (Vertex w : g_.neighbors(v)) {
        if (ex.blocked(w)) continue;
        Vertex k = ws_.lab_path[w];
        if (ws_.deep[k] == kNoVertex) {
          touched.push_back(k);
          ws_.deep[k] = ws_.high[k] = v;
          continue;
        }
        if (h_.depth(v) > h_.depth(ws_.deep[k])) ws_.deep[k] = v;
        if (h_.depth(v) < h_.depth(ws_.high[k])) ws_.high[k] = v;
      }
    for (Vertex c : kids) {
      Vertex k = ws_.lab_path[c];
      child(c).cid_path = k;
      if (ws_.deep[k] != kNoVertex) {
        child(c).beta = ws_.deep[k];
        child(c).a = ws_.high[k];
      }
    }
    for (Vertex k : touched) ws_.deep[k] = ws_.high[k] = kNoVertex;
  }

  void alphas() {
    for (Vertex c : h_.children(b_)) child(c).alpha = alpha_with(ws_.ex, h_, c);
  }

  void vertex_facts() {
    auto& vf = out_.vertex[b_];
    vf.c = vertex_c_with(ws_.ex, h_, b_);
    Vertex hb = h_.heavy(b_);
    const auto& hc = child(hb);
    if (hc.q)
      for (Vertex top : paths_on(h_, b_, *hc.q)) vf.b_list.push_back({top, vertex_b_with(ws_.ex, h_, b_, top), false});
    if (hc.ell)
      for (Vertex top : paths_on(h_, s_, *hc.ell)) vf.d_list.push_back({top, vertex_d_with(ws_.ex, h_, b_, top)});
  }

  // Bits are sized up front; requests fill the ones that are not trivially false.
  void bits_over(Vertex c, std::optional<Vertex> top, std::vector<bool>& bits, Kind k) {
    if (!top) return;
    auto up = h_.upper_interesting(*top);
    bits.assign(up.size(), false);
    if (b_ == s_) return;
    for (std::size_t i = 0; i < up.size(); ++i)
      if (up[i] != s_ && up[i] != c) ask(up[i], c, k, static_cast<std::int32_t>(i));
  }

  void bit_requests() {
    for (Vertex c : h_.children(b_)) {
      auto& cf = child(c);
      bits_over(c, cf.alpha, cf.down_bits, Kind::down);
      bits_over(c, c, cf.up_bits, Kind::up);
      bits_over(c, cf.ell, cf.in_bits, Kind::in);
      bits_over(c, cf.g, cf.g_bits, Kind::gbit);
      if (b_ != s_) {
        if (cf.a && *cf.a != s_) ask(*cf.a, c, Kind::conn_a);
        if (cf.g && *cf.g != c) ask(*cf.g, c, Kind::conn_g);
      }
      if (all_pairs_) {
        if (cf.ell) {
          auto up = h_.upper_interesting(*cf.ell);
          cf.psubs.resize(up.size());
          for (std::size_t i = 0; i < up.size(); ++i) {
            cf.psubs[i].c = up[i];
            ask(up[i], c, Kind::psub, static_cast<std::int32_t>(i));
          }
        }
        if (cf.f) ask(*cf.f, c, Kind::ah_parent);
      }
    }
    auto& bl = out_.vertex[b_].b_list;
    Vertex hb = h_.heavy(b_);
    for (std::size_t i = 0; i < bl.size(); ++i)
      if (bl[i].b && b_ != s_) ask(*bl[i].b, hb, Kind::blist, static_cast<std::int32_t>(i));
  }

  // Light subtrees of b plus h(b): every vertex that needs a label in G-{b}.
  std::vector<Vertex> needed_vertices() {
    std::vector<Vertex> out;
    Vertex hb = h_.heavy(b_);
    out.push_back(hb);
    for (Vertex c : h_.children(b_))
      if (c != hb)
        for (Vertex t : h_.subtree(c)) out.push_back(t);
    return out;
  }

  void sub_requests(const Hld& hs, const std::vector<Vertex>& needed) {
    std::vector<Vertex> parents;
    for (Vertex t : needed)
      for (Vertex x : hs.interesting(t)) {
        Vertex b2 = hs.parent(x);
        if (!ws_.mark[b2]) {
          ws_.mark[b2] = 1;
          parents.push_back(b2);
        }
      }
    for (Vertex b2 : parents) {
      ws_.mark[b2] = 0;
      ask(b2, b2, Kind::sub_table);
    }
  }

  void answer_requests(const Hld* hs) {
    auto& req = ws_.req;
    std::sort(req.begin(), req.end(), [](const Request& x, const Request& y) {
      return x.w != y.w ? x.w < y.w : (x.who != y.who ? x.who < y.who : x.slot < y.slot);
    });
    auto& ex = ws_.ex;
    auto& lab = ws_.lab_w;
    auto conn = [&](Vertex p, Vertex q) { return p != kNoVertex && q != kNoVertex && lab[p] != kNoVertex && lab[p] == lab[q]; };
    Vertex hb = h_.heavy(b_);
    for (std::size_t i = 0; i < req.size();) {
      Vertex w = req[i].w;
      ex.clear_blocks();
      ex.block(b_);
      ex.block(w);
      ex.label_components(lab);
      for (; i < req.size() && req[i].w == w; ++i) {
        const Request& r = req[i];
        if (r.kind == Kind::sub_table) {
          Vertex root = hs->root_of(r.who);
          for (Vertex c2 : hs->children(r.who)) {
            ws_.sub_conn[c2] = root != r.who && conn(c2, root);
            ws_.sub_cid[c2] = lab[c2];
          }
          continue;
        }
        auto& cf = child(r.who);
        switch (r.kind) {
          case Kind::down: cf.down_bits[r.slot] = conn(s_, r.who); break;
          case Kind::up: cf.up_bits[r.slot] = conn(s_, r.who); break;
          case Kind::in: cf.in_bits[r.slot] = conn(s_, r.who); break;
          case Kind::gbit: cf.g_bits[r.slot] = conn(s_, r.who); break;
          case Kind::conn_a: cf.conn_a = conn(s_, r.who); break;
          case Kind::conn_g: cf.conn_g = conn(s_, r.who); break;
          case Kind::blist: out_.vertex[b_].b_list[r.slot].conn = conn(s_, r.who); break;
          case Kind::psub: {
            auto& ps = cf.psubs[r.slot];
            ps.cid = lab[r.who];
            ps.conn_hb = conn(r.who, hb);
            ps.conn_hc = conn(r.who, h_.heavy(w));
            break;
          }
          case Kind::ah_parent: cf.conn_par = conn(r.who, h_.parent(b_)); break;
          case Kind::sub_table: break;
        }
      }
    }
  }

  // AnSet and CID in G - T+_{h(b)} for every vertex of b's light subtrees.
  void analog_sets() {
    auto& ex = ws_.ex;
    Vertex hb = h_.heavy(b_);
    ex.clear_blocks();
    ex.block_all(h_.subtree(hb));
    ex.block(b_);
    ex.label_components(ws_.lab_an);
    std::vector<Vertex> touched;
    for (Vertex v : h_.subtree(hb))
      for (Vertex w : g_.neighbors(v)) {
        if (ex.blocked(w)) continue;
        Vertex k = ws_.lab_an[w];
        Vertex& l1 = ws_.low1[k];
        Vertex& l2 = ws_.low2[k];
        if (l1 == kNoVertex) touched.push_back(k);
        if (v == l1 || v == l2) continue;
        if (l1 == kNoVertex || v < l1) {
          l2 = l1;
          l1 = v;
        } else if (l2 == kNoVertex || v < l2) {
          l2 = v;
        }
      }
    for (Vertex c : h_.children(b_)) {
      if (c == hb) continue;
      std::size_t slot = h_.nl(c) - 1;
      for (Vertex t : h_.subtree(c)) {
        auto& af = out_.ancestors[t][slot];
        Vertex k = ws_.lab_an[t];
        af.cid_outside = k;
        if (ws_.low1[k] != kNoVertex) af.anset.push_back(ws_.low1[k]);
        if (ws_.low2[k] != kNoVertex) af.anset.push_back(ws_.low2[k]);
      }
    }
    for (Vertex k : touched) ws_.low1[k] = ws_.low2[k] = kNoVertex;
  }

  void sub_labels(const Graph& gs, const Hld& hs, const std::vector<Vertex>& needed) {
    const std::uint64_t inst = gs.fingerprint();
    Vertex hb = h_.heavy(b_);
    for (Vertex t : needed) {
      std::optional<LabelSs1f> ss1;
      if (b_ != s_) ss1 = make_ss1f(hs, t, inst, hs.root_of(t) == s_, ws_.sub_conn);
      std::optional<Label1Vft> one;
      if (all_pairs_) one = make_label1(hs, t, inst, ws_.lab_b[t], ws_.sub_conn, ws_.sub_cid);
      // Children of b keep their own copy; vertices of light subtrees get an ancestor slot.
      if (h_.parent(t) == b_) {
        child(t).sub_ss1 = ss1;
        child(t).sub_1vft = one;
      }
      if (t != hb) {
        auto& af = out_.ancestors[t][h_.nl(h_.child_on_path(b_, t)) - 1];
        af.sub_ss1 = std::move(ss1);
        af.sub_1vft = std::move(one);
      }
    }
  }

  const Graph& g_;
  const Hld& h_;
  bool all_pairs_;
  FaultTables& out_;
  Workspace& ws_;
  Vertex b_ = kNoVertex, s_ = kNoVertex;
};

}  // namespace

FaultTables build_fault_tables(const Graph& g, const Hld& h, bool all_pairs, const EncodeOptions& opt) {
  const Vertex n = g.n();
  FaultTables t;
  t.instance = g.fingerprint();
  t.child.resize(n);
  t.vertex.resize(n);
  t.ancestors.resize(n);
  for (Vertex v = 0; v < n; ++v) t.ancestors[v].resize(h.nl(v));
#pragma omp parallel if (opt.parallel)
  {
    Workspace ws(g);
#pragma omp for schedule(dynamic, 1)
    for (Vertex b = 0; b < n; ++b) {
      if (h.children(b).empty()) continue;
      ParentTask task(g, h, all_pairs, t, ws);
      task.run(b);
    }
  }
  return t;
}

}  // namespace ftl
