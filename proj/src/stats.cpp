#include "ftl/stats.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ftl/error.hpp"

namespace ftl {

namespace {

template <class L>
std::size_t payload(const L& l, Vertex n) {
  BitWriter w(vertex_bits(n), true);
  write_label(w, l);
  return w.payload_bits();
}

void part(SizeStats& s, const std::string& name, std::size_t bits) {
  for (auto& [k, v] : s.parts)
    if (k == name) {
      v = std::max(v, bits);
      return;
    }
  s.parts.emplace_back(name, bits);
}

void add(SizeStats& s, std::size_t bits, double& sum) {
  s.max_bits = std::max(s.max_bits, bits);
  sum += static_cast<double>(bits);
}

double log3(Vertex n) {
  double l = std::log2(static_cast<double>(std::max<Vertex>(n, 2)));
  return l * l * l;
}

}  // namespace

std::size_t eft_tree_edge_bits(const SchemeSpec& spec) {
  SketchShape shape = shape_of(spec);
  EftEdgeLabel l;
  l.spec = spec;
  l.eid = {1, 0, 1, 0, 1};
  l.tree = true;
  l.subtree = std::make_shared<const Sketch>(shape);
  return payload(l, spec.n);
}

SizeStats size_stats(const Graph& g, const BuildSpec& spec) {
  SizeStats s;
  s.scheme = spec.scheme;
  s.n = g.n();
  s.m = g.m();
  const Vertex n = g.n();
  double sum = 0;
  auto start = std::chrono::steady_clock::now();
  if (spec.scheme == Scheme::fvft) {
    FvftOptions o;
    o.f = spec.f;
    o.seed = spec.seed;
    o.certificate = spec.certificate;
    o.threshold = spec.threshold;
    o.c1 = spec.c1;
    o.encode = spec.encode;
    for (const auto& x : fvft_label_sizes(g, o)) {
      add(s, x.payload, sum);
      for (std::size_t d = 0; d < x.level_payload.size(); ++d) part(s, "level" + std::to_string(d), x.level_payload[d]);
    }
    if (spec.f >= 3) {
      std::uint64_t m = spec.certificate ? sparse_certificate(g, spec.f + 1).m() : g.m();
      s.eft_constant = static_cast<double>(eft_tree_edge_bits({std::max<Vertex>(n, 1), m, spec.seed, spec.c1})) / log3(n);
      s.bound = predicted_size_bound(spec.f, n, s.eft_constant);
    }
  } else {
    LabelSet l = build_labels(g, spec);
    for (const auto& x : l.one) add(s, payload(x, n), sum);
    for (const auto& x : l.ss2) add(s, payload(x, n), sum);
    for (const auto& x : l.two) {
      add(s, payload(x, n), sum);
      part(s, "one", payload(x.one, n));
      part(s, "source_one", payload(x.source_one, n));
      part(s, "ss2", payload(x.ss2, n));
      part(s, "p", payload(x.p, n));
      part(s, "dep", payload(x.dep, n));
    }
    for (const auto& x : l.eft_vertex) add(s, payload(x, n), sum);
    for (const auto& x : l.eft_edge) part(s, x.tree ? "tree_edge" : "edge", payload(x, n));
  }
  s.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.mean_bits = n > 0 ? sum / n : 0;
  return s;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::string csv_header() {
  return "scheme,family,n,m,max_bits,mean_bits,bits_per_log2,bits_per_log3,bound_ratio,build_seconds,parts";
}

std::string csv_row(const std::string& family, const SizeStats& s) {
  double l = std::log2(static_cast<double>(std::max<Vertex>(s.n, 2)));
  std::ostringstream o;
  o << scheme_name(s.scheme) << ',' << family << ',' << s.n << ',' << s.m << ',' << s.max_bits << ',' << s.mean_bits << ','
    << static_cast<double>(s.max_bits) / (l * l) << ',' << static_cast<double>(s.max_bits) / (l * l * l) << ',';
  if (s.bound > 0) o << static_cast<double>(s.max_bits) / s.bound;
  o << ',' << s.build_seconds << ',';
  for (std::size_t i = 0; i < s.parts.size(); ++i) o << (i ? ";" : "") << s.parts[i].first << '=' << s.parts[i].second;
  return o.str();
}

}  // namespace ftl
