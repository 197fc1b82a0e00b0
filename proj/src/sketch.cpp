#include "ftl/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "ftl/error.hpp"

namespace ftl {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & SchemeParams::kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
  std::uint64_t s = lo + hi;
  return s >= SchemeParams::kPrime ? s - SchemeParams::kPrime : s;
}

std::uint64_t edge_key(Vertex n, Vertex u, Vertex v) {
  return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
}

int ceil_log2(Vertex n) { return n <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<std::uint32_t>(n - 1))); }

}  // namespace

SketchShape shape_of(const SchemeSpec& spec) {
  SketchShape s;
  double lg = spec.n > 1 ? std::log2(static_cast<double>(spec.n)) : 0.0;
  s.units = std::max(1, static_cast<int>(std::ceil(spec.c1 * lg - 1e-9)));
  s.scales = static_cast<int>(std::bit_width(std::max<std::uint64_t>(spec.m, 1)));
  s.uid_bits = std::clamp(4 * ceil_log2(spec.n), 32, 64);
  return s;
}

SchemeParams make_params(Vertex n, std::uint64_t m, std::uint64_t seed, int c1) {
  if (n < 1) throw InputError("sketch parameters need n >= 1");
  if (c1 < 1) throw InputError("sketch constant c1 must be positive");
  // Keys u*n+v must stay below p, and p must exceed 2^(2*scales).
  if (n >= (Vertex{1} << 30)) throw InputError("too many vertices for the sketch field");
  SchemeParams p;
  p.spec = {n, m, seed, c1};
  p.shape = shape_of(p.spec);
  if (2 * p.shape.scales >= 61) throw InputError("too many edges for the sketch field");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedU};
  std::mt19937_64 rng(seq);
  p.uid_seed = {rng(), rng()};
  std::uniform_int_distribution<std::uint64_t> pick_a(1, SchemeParams::kPrime - 1), pick_b(0, SchemeParams::kPrime - 1);
  p.a.resize(static_cast<std::size_t>(p.shape.units));
  p.b.resize(p.a.size());
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    p.a[i] = pick_a(rng);
    p.b[i] = pick_b(rng);
  }
  return p;
}

std::uint64_t SchemeParams::digest() const {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(spec.n));
  h = mix64(h ^ spec.m);
  h = mix64(h ^ spec.seed);
  return mix64(h ^ static_cast<std::uint64_t>(spec.c1));
}

std::uint64_t SchemeParams::uid(Vertex u, Vertex v) const {
  std::uint64_t key = edge_key(spec.n, std::min(u, v), std::max(u, v));
  std::uint64_t x = mix64(mix64(key ^ uid_seed[0]) ^ uid_seed[1]);
  return shape.uid_bits == 64 ? x : x & ((std::uint64_t{1} << shape.uid_bits) - 1);
}

std::uint64_t SchemeParams::hash(int unit, Vertex u, Vertex v) const {
  std::uint64_t key = edge_key(spec.n, std::min(u, v), std::max(u, v));
  auto i = static_cast<std::size_t>(unit);
  std::uint64_t r = mulmod(a[i], key) + b[i];
  if (r >= kPrime) r -= kPrime;
  return r & ((std::uint64_t{1} << (shape.scales - 1)) - 1);
}

int SchemeParams::depth(int unit, Vertex u, Vertex v) const {
  return shape.scales - static_cast<int>(std::bit_width(hash(unit, u, v)));
}

EdgeWord SchemeParams::word(Vertex u, Vertex v, Vertex tin_u, Vertex tin_v) const {
  if (u > v) {
    std::swap(u, v);
    std::swap(tin_u, tin_v);
  }
  return {uid(u, v), u, v, tin_u, tin_v};
}

bool SchemeParams::valid(const EdgeWord& w) const {
  if (w.u < 0 || w.u >= w.v || w.v >= spec.n) return false;
  if (w.tin_u < 0 || w.tin_u >= spec.n || w.tin_v < 0 || w.tin_v >= spec.n) return false;
  return w.uid == uid(w.u, w.v);
}

void Sketch::toggle(const SchemeParams& p, const EdgeWord& w) {
  for (int i = 0; i < units_; ++i) {
    int d = p.depth(i, w.u, w.v);
    for (int j = 0; j < d; ++j) at(i, j) ^= w;
  }
}

Sketch& Sketch::operator^=(const Sketch& o) {
  if (o.cells_.size() != cells_.size()) throw LabelError("sketch shapes differ");
  for (std::size_t k = 0; k < cells_.size(); ++k) cells_[k] ^= o.cells_[k];
  return *this;
}

bool Sketch::zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const EdgeWord& w) { return w.zero(); });
}

Sketch vertex_sketch(const SchemeParams& p, const Graph& g, const Hld& h, Vertex v) {
  Sketch s(p.shape);
  for (Vertex w : g.neighbors(v)) s.toggle(p, p.word(v, w, h.tin(v), h.tin(w)));
  return s;
}

Sketch set_sketch(const SchemeParams& p, const Graph& g, const Hld& h, std::span<const Vertex> set) {
  Sketch s(p.shape);
  for (Vertex v : set) s ^= vertex_sketch(p, g, h, v);
  return s;
}

std::optional<EdgeWord> recover_edge(std::span<const EdgeWord> unit, const SchemeParams& p) {
  for (const EdgeWord& w : unit)
    if (p.valid(w)) return w;
  return std::nullopt;
}

void put_spec(BitWriter& w, const SchemeSpec& s) {
  w.put_excluded(static_cast<std::uint32_t>(s.n), 32);
  w.put_excluded(s.m, 64);
  w.put_excluded(s.seed, 64);
  w.put_excluded(static_cast<std::uint64_t>(s.c1), 16);
}

SchemeSpec get_spec(BitReader& r) {
  SchemeSpec s;
  s.n = static_cast<Vertex>(r.get(32));
  s.m = r.get(64);
  s.seed = r.get(64);
  s.c1 = static_cast<int>(r.get(16));
  if (s.n < 1 || s.c1 < 1) throw LabelError("malformed sketch scheme header");
  return s;
}

void put_word(BitWriter& w, const EdgeWord& e, int uid_bits) {
  w.put(e.uid, uid_bits);
  w.put_vertex(e.u);
  w.put_vertex(e.v);
  w.put_vertex(e.tin_u);
  w.put_vertex(e.tin_v);
}

EdgeWord get_word(BitReader& r, int uid_bits) {
  EdgeWord e;
  e.uid = r.get(uid_bits);
  e.u = r.get_vertex();
  e.v = r.get_vertex();
  e.tin_u = r.get_vertex();
  e.tin_v = r.get_vertex();
  return e;
}

void write_sketch(BitWriter& w, const Sketch& s, const SketchShape& shape) {
  if (s.units() != shape.units || s.scales() != shape.scales) throw LabelError("sketch shape does not match its scheme");
  if (w.counting()) {
    w.count(static_cast<std::size_t>(shape.cells()) * static_cast<std::size_t>(shape.uid_bits + 4 * w.vbits()));
    return;
  }
  for (const EdgeWord& e : s.cells()) put_word(w, e, shape.uid_bits);
}

Sketch read_sketch(BitReader& r, const SketchShape& shape) {
  Sketch s(shape);
  for (int i = 0; i < shape.units; ++i)
    for (int j = 0; j < shape.scales; ++j) s.at(i, j) = get_word(r, shape.uid_bits);
  return s;
}

}  // namespace ftl
