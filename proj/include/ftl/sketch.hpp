#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/graph.hpp"
#include "ftl/hld.hpp"

namespace ftl {

// Extended edge ID: a pseudorandom uid plus both endpoints and their preorder positions.
// XOR of words is the sketch algebra; a lone word passes valid(), sums of several do not
// (except with tiny probability).
struct EdgeWord {
  std::uint64_t uid = 0;
  Vertex u = 0;  // u < v for a real edge
  Vertex v = 0;
  Vertex tin_u = 0;
  Vertex tin_v = 0;

  EdgeWord& operator^=(const EdgeWord& o) {
    uid ^= o.uid;
    u ^= o.u;
    v ^= o.v;
    tin_u ^= o.tin_u;
    tin_v ^= o.tin_v;
    return *this;
  }
  bool zero() const { return uid == 0 && u == 0 && v == 0 && tin_u == 0 && tin_v == 0; }
  friend bool operator==(const EdgeWord&, const EdgeWord&) = default;
};

// Everything the parameters are derived from. Labels carry this (outside the payload count)
// so a decoder can regenerate the hashes without any side file.
struct SchemeSpec {
  Vertex n = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  int c1 = 16;
  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

struct SketchShape {
  int units = 1;     // L
  int scales = 1;    // floor(log2 m) + 1
  int uid_bits = 32;
  int cells() const { return units * scales; }
};
SketchShape shape_of(const SchemeSpec& spec);

struct SchemeParams {
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  SchemeSpec spec;
  SketchShape shape;
  std::array<std::uint64_t, 2> uid_seed{};
  std::vector<std::uint64_t> a, b;  // per-unit hash (a*key + b) mod p

  Vertex n() const { return spec.n; }
  int units() const { return shape.units; }
  int scales() const { return shape.scales; }
  std::uint64_t digest() const;

  std::uint64_t uid(Vertex u, Vertex v) const;
  // h_i(e) in [0, 2^(scales-1)).
  std::uint64_t hash(int unit, Vertex u, Vertex v) const;
  // Number of leading cells of the unit that sample the edge: cell j holds e iff h < 2^(scales-1-j).
  int depth(int unit, Vertex u, Vertex v) const;
  EdgeWord word(Vertex u, Vertex v, Vertex tin_u, Vertex tin_v) const;
  // The word is a single edge: ordered in-range endpoints and the uid they imply.
  bool valid(const EdgeWord& w) const;
};

// L = max(1, ceil(c1 log2 n)), scales = floor(log2 max(m,1)) + 1. Deterministic in the
// arguments. Throws InputError when n or m is too large for the 61-bit prime field.
SchemeParams make_params(Vertex n, std::uint64_t m, std::uint64_t seed, int c1 = 16);
inline SchemeParams make_params(const SchemeSpec& s) { return make_params(s.n, s.m, s.seed, s.c1); }

class Sketch {
 public:
  Sketch() = default;
  explicit Sketch(const SketchShape& s) : units_(s.units), scales_(s.scales), cells_(static_cast<std::size_t>(s.cells())) {}

  int units() const { return units_; }
  int scales() const { return scales_; }
  EdgeWord& at(int unit, int scale) { return cells_[static_cast<std::size_t>(unit * scales_ + scale)]; }
  const EdgeWord& at(int unit, int scale) const { return cells_[static_cast<std::size_t>(unit * scales_ + scale)]; }
  std::span<const EdgeWord> unit(int i) const {
    return {cells_.data() + static_cast<std::size_t>(i * scales_), static_cast<std::size_t>(scales_)};
  }
  std::span<EdgeWord> unit(int i) { return {cells_.data() + static_cast<std::size_t>(i * scales_), static_cast<std::size_t>(scales_)}; }
  const std::vector<EdgeWord>& cells() const { return cells_; }

  // Toggles one edge in every cell that samples it.
  void toggle(const SchemeParams& p, const EdgeWord& w);
  Sketch& operator^=(const Sketch& o);
  bool zero() const;
  friend bool operator==(const Sketch&, const Sketch&) = default;

 private:
  int units_ = 0;
  int scales_ = 0;
  std::vector<EdgeWord> cells_;
};

// Sketch of the edges incident to v; words carry preorder positions from h.
Sketch vertex_sketch(const SchemeParams& p, const Graph& g, const Hld& h, Vertex v);
// XOR of the vertex sketches over a set.
Sketch set_sketch(const SchemeParams& p, const Graph& g, const Hld& h, std::span<const Vertex> set);

// First cell of the unit (scale 0 upward) that holds exactly one edge.
std::optional<EdgeWord> recover_edge(std::span<const EdgeWord> unit, const SchemeParams& p);

void put_spec(BitWriter& w, const SchemeSpec& s);
SchemeSpec get_spec(BitReader& r);
void write_sketch(BitWriter& w, const Sketch& s, const SketchShape& shape);
Sketch read_sketch(BitReader& r, const SketchShape& shape);
void put_word(BitWriter& w, const EdgeWord& e, int uid_bits);
EdgeWord get_word(BitReader& r, int uid_bits);

}  // namespace ftl
