#include "ftl/vftf.hpp"

#include <algorithm>
#include <cmath>

#include "ftl/error.hpp"

namespace ftl {

namespace {

void check_options(const FvftOptions& opt) {
  if (opt.f < 2) throw InputError("f-VFT labels need f >= 2");
  if (opt.f > opt.max_f) throw InputError("f exceeds the configured cap of " + std::to_string(opt.max_f));
  if (opt.threshold && *opt.threshold < 1) throw InputError("degree threshold must be positive");
}

FvftOptions nested_options(const FvftOptions& opt, Vertex x) {
  FvftOptions sub = opt;
  sub.f = opt.f - 1;
  sub.seed = mix64(opt.seed ^ mix64(static_cast<std::uint64_t>(x) + 0x51ed2701ULL));
  return sub;
}

// One level of the construction for f >= 3: the sparsified graph, its high-degree set and
// its EFT labels.
struct Level {
  Graph gp;
  std::vector<Vertex> high;
  std::vector<char> is_high;
  EftLabels eft;
  ComponentMap comp;
  std::uint64_t instance = 0;
};

Level prepare(const Graph& g, const FvftOptions& opt) {
  Level lv;
  lv.gp = opt.certificate ? sparse_certificate(g, opt.f + 1) : g;
  const Vertex n = g.n();
  std::int64_t delta = opt.threshold ? *opt.threshold : degree_threshold(opt.f, n);
  lv.is_high.assign(static_cast<std::size_t>(n), 0);
  std::uint64_t hd = mix64(static_cast<std::uint64_t>(delta));
  for (Vertex v = 0; v < n; ++v)
    if (static_cast<std::int64_t>(lv.gp.degree(v)) >= delta) {
      lv.high.push_back(v);
      lv.is_high[v] = 1;
      hd = mix64(hd ^ static_cast<std::uint64_t>(v));
    }
  Hld h(lv.gp);
  lv.eft = encode_eft(lv.gp, h, opt.seed, opt.encode, opt.c1);
  lv.comp = components(lv.gp);
  lv.instance = mix64(mix64(lv.gp.fingerprint() ^ static_cast<std::uint64_t>(opt.f)) ^ mix64(opt.seed ^ hd));
  return lv;
}

// Everything in v's label except the nested entries.
LabelFvft own_label(const Level& lv, const FvftOptions& opt, Vertex v) {
  LabelFvft l;
  l.f = opt.f;
  l.instance = lv.instance;
  l.id = v;
  l.base = lv.comp.cid[v];
  l.high = lv.is_high[v];
  l.eft = lv.eft.vertex[v];
  if (!l.high)
    for (Vertex w : lv.gp.neighbors(v)) l.low_edges.push_back(lv.eft.edge_label(lv.gp, v, w));
  return l;
}

std::vector<LabelFvft> wrap_2vft(const Graph& g, const FvftOptions& opt) {
  auto two = encode_2vft(g, opt.encode, opt.certificate);
  std::vector<LabelFvft> out(two.size());
  for (std::size_t v = 0; v < two.size(); ++v) {
    out[v].f = 2;
    out[v].instance = two[v].instance();
    out[v].id = static_cast<Vertex>(v);
    out[v].base = two[v].base();
    out[v].two = std::move(two[v]);
  }
  return out;
}

const LabelFvft& nested_for(const LabelFvft& l, Vertex x) {
  auto it = std::lower_bound(l.nested_at.begin(), l.nested_at.end(), x);
  if (it == l.nested_at.end() || *it != x) throw LabelError("label lacks the nested entry of a high-degree fault");
  return l.nested[static_cast<std::size_t>(it - l.nested_at.begin())];
}

void add_nested(FvftSize& into, const FvftSize& sub, int vbits) {
  into.total += sub.total + static_cast<std::size_t>(vbits);
  into.payload += sub.payload + static_cast<std::size_t>(vbits);
  into.level_payload[0] += static_cast<std::size_t>(vbits);
  if (into.level_payload.size() < sub.level_payload.size() + 1) into.level_payload.resize(sub.level_payload.size() + 1, 0);
  for (std::size_t d = 0; d < sub.level_payload.size(); ++d) into.level_payload[d + 1] += sub.level_payload[d];
}

}  // namespace

std::int64_t degree_threshold(int f, Vertex n) {
  if (f < 3) throw InputError("degree threshold is defined for f >= 3");
  if (n < 1) return 1;
  long double e = 1.0L - 1.0L / std::ldexp(1.0L, f - 2);
  long double v = 2.0L * f * std::pow(static_cast<long double>(n), e);
  long double r = std::round(v);
  if (std::fabs(v - r) <= 1e-9L * v) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(v));
}

double predicted_size_bound(int f, Vertex n, double c) {
  if (f < 2) throw InputError("size bound is defined for f >= 2");
  double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
  double e = 1.0 - 1.0 / std::ldexp(1.0, f - 2);
  return std::ldexp(1.0, f - 2) * f * std::pow(static_cast<double>(n), e) * c * lg * lg * lg;
}

void write_label(BitWriter& w, const LabelFvft& l) {
  w.put(static_cast<std::uint64_t>(l.f), 4);
  w.put_excluded(l.instance, 64);
  w.put_vertex(l.id);
  w.put_vertex(l.base);
  if (l.f == 2) {
    if (!l.two) throw LabelError("2-VFT base label missing");
    write_label(w, *l.two);
    return;
  }
  if (!l.eft) throw LabelError("EFT part missing");
  if (l.nested.size() != l.nested_at.size()) throw LabelError("nested entries and their vertices disagree");
  w.put_bit(l.high);
  write_label(w, *l.eft);
  if (!l.high) {
    w.put_count(l.low_edges.size());
    for (const auto& e : l.low_edges) write_label(w, e);
  }
  w.put_count(l.nested.size());
  for (std::size_t i = 0; i < l.nested.size(); ++i) {
    w.put_vertex(l.nested_at[i]);
    write_label(w, l.nested[i]);
  }
}

LabelFvft read_label_fvft(BitReader& r) {
  LabelFvft l;
  l.f = static_cast<int>(r.get(4));
  l.instance = r.get(64);
  l.id = r.get_vertex();
  l.base = r.get_vertex();
  if (l.f < 2) throw LabelError("malformed f-VFT label");
  if (l.f == 2) {
    l.two = read_label_2vft(r);
    return l;
  }
  l.high = r.get_bit();
  l.eft = read_eft_vertex(r);
  if (!l.high) {
    std::size_t k = r.get_count();
    for (std::size_t i = 0; i < k; ++i) l.low_edges.push_back(read_eft_edge(r));
  }
  std::size_t k = r.get_count();
  for (std::size_t i = 0; i < k; ++i) {
    l.nested_at.push_back(r.get_vertex());
    l.nested.push_back(read_label_fvft(r));
    if (l.nested.back().f != l.f - 1) throw LabelError("nested label has the wrong fault budget");
  }
  if (!std::is_sorted(l.nested_at.begin(), l.nested_at.end())) throw LabelError("nested entries out of order");
  return l;
}

std::vector<LabelFvft> encode_fvft(const Graph& g, const FvftOptions& opt) {
  check_options(opt);
  if (g.n() == 0) return {};
  if (opt.f == 2) return wrap_2vft(g, opt);
  Level lv = prepare(g, opt);
  const Vertex n = g.n();
  std::vector<std::vector<LabelFvft>> subs(lv.high.size());
  const auto hs = static_cast<std::int64_t>(lv.high.size());
#pragma omp parallel for schedule(dynamic, 1) if (opt.encode.parallel)
  for (std::int64_t i = 0; i < hs; ++i) {
    Vertex x = lv.high[static_cast<std::size_t>(i)];
    std::vector<Vertex> gone = {x};
    subs[static_cast<std::size_t>(i)] = encode_fvft(lv.gp.without(gone), nested_options(opt, x));
  }
  std::vector<LabelFvft> out(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    out[v] = own_label(lv, opt, v);
    for (std::size_t i = 0; i < lv.high.size(); ++i) {
      if (lv.high[i] == v) continue;
      out[v].nested_at.push_back(lv.high[i]);
      out[v].nested.push_back(std::move(subs[i][v]));
    }
  }
  return out;
}

FvftSize measure(const LabelFvft& l, Vertex n) {
  const int vb = vertex_bits(n);
  FvftSize s;
  if (l.nested.empty()) {
    BitWriter w(vb, true);
    write_label(w, l);
    s.total = w.size_bits();
    s.payload = w.payload_bits();
    s.level_payload = {s.payload};
    return s;
  }
  LabelFvft own = l;
  own.nested.clear();
  own.nested_at.clear();
  s = measure(own, n);
  for (const auto& sub : l.nested) add_nested(s, measure(sub, n), vb);
  return s;
}

std::vector<FvftSize> fvft_label_sizes(const Graph& g, const FvftOptions& opt) {
  check_options(opt);
  const Vertex n = g.n();
  std::vector<FvftSize> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  if (opt.f == 2) {
    auto labels = wrap_2vft(g, opt);
    for (Vertex v = 0; v < n; ++v) out[v] = measure(labels[v], n);
    return out;
  }
  Level lv = prepare(g, opt);
#pragma omp parallel for schedule(dynamic, 64) if (opt.encode.parallel)
  for (Vertex v = 0; v < n; ++v) out[v] = measure(own_label(lv, opt, v), n);
  // One nested instance alive at a time.
  for (Vertex x : lv.high) {
    std::vector<Vertex> gone = {x};
    auto sub = fvft_label_sizes(lv.gp.without(gone), nested_options(opt, x));
    for (Vertex v = 0; v < n; ++v)
      if (v != x) add_nested(out[v], sub[v], vertex_bits(n));
  }
  return out;
}

bool decode_fvft(const LabelFvft& u, const LabelFvft& v, std::span<const LabelFvft* const> faults, FvftTrace* trace) {
  auto same = [&](const LabelFvft& l) {
    if (l.instance != u.instance || l.f != u.f) throw LabelError("f-VFT labels from different instances");
  };
  same(v);
  for (auto* x : faults) same(*x);
  if (faults.size() > static_cast<std::size_t>(u.f)) throw InputError("more faults than the labels tolerate");
  for (auto* x : faults)
    if (x->id == u.id || x->id == v.id) return false;
  if (u.id == v.id) return true;

  if (u.f == 2) {
    if (!u.two || !v.two) throw LabelError("2-VFT base label missing");
    if (trace) trace->base_2vft = true;
    if (faults.empty()) return decode_0vft(u.two->one, v.two->one);
    const LabelFvft& x = *faults[0];
    const LabelFvft& y = faults.size() > 1 ? *faults[1] : x;
    if (!x.two || !y.two) throw LabelError("2-VFT base label missing");
    return decode_2vft(*u.two, *v.two, *x.two, *y.two);
  }
  if (u.base != v.base) return false;

  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (!faults[i]->high) continue;
    const Vertex x = faults[i]->id;
    std::vector<const LabelFvft*> rest;
    for (std::size_t j = 0; j < faults.size(); ++j)
      if (faults[j]->id != x) rest.push_back(&nested_for(*faults[j], x));
    if (trace) ++trace->high_steps;
    return decode_fvft(nested_for(u, x), nested_for(v, x), rest, trace);
  }

  if (!u.eft || !v.eft) throw LabelError("EFT part missing");
  std::vector<EftEdgeLabel> edges;
  for (auto* x : faults) edges.insert(edges.end(), x->low_edges.begin(), x->low_edges.end());
  if (trace) ++trace->eft_calls;
  return decode_eft(*u.eft, *v.eft, edges);
}

}  // namespace ftl
