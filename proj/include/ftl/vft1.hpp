#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/options.hpp"

namespace ftl {

struct Label1Vft {
  std::uint64_t instance = 0;
  ExtendedId owner;
  Vertex base = kNoVertex;  // largest vertex of the owner's component
  struct Entry {
    ExtendedId parent;  // b
    ExtendedId child;   // b' in I(owner)
    bool conn_s = false;
    Vertex cid = kNoVertex;  // component of b' once b is gone
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;
  friend bool operator==(const Label1Vft&, const Label1Vft&) = default;
};

void write_label(BitWriter& w, const Label1Vft& l);
Label1Vft read_label1(BitReader& r);

// For every non-root vertex c: does c still reach its root once par(c) fails, and which
// component is it in then. Indexed by c; entries of roots are unused.
struct SingleFaultTable {
  std::vector<char> conn_s;
  std::vector<Vertex> cid;
};
SingleFaultTable single_fault_table(const Graph& g, const Hld& h, const EncodeOptions& opt = {});

// Label of a built from precomputed per-child facts (spans indexed by vertex).
Label1Vft make_label1(const Hld& h, Vertex a, std::uint64_t instance, Vertex base,
                      std::span<const char> conn_s, std::span<const Vertex> cid);

std::vector<Label1Vft> encode_1vft(const Graph& g, const Hld& h, const EncodeOptions& opt = {});
inline std::vector<Label1Vft> encode_1vft(const Graph& g, const EncodeOptions& opt = {}) {
  Hld h(g);
  return encode_1vft(g, h, opt);
}

struct SourceAnswer {
  bool connected = true;        // w stays joined to the root of its tree
  std::optional<Vertex> cid;    // w's component, known when x is an ancestor of w
};
// x-connectivity of w and the root of w's tree.
SourceAnswer decode_source(const Label1Vft& w, const Label1Vft& x);
bool decode_1vft(const Label1Vft& u, const Label1Vft& v, const Label1Vft& x);
// No faults at all: same component.
inline bool decode_0vft(const Label1Vft& u, const Label1Vft& v) { return u.owner.id == v.owner.id || u.base == v.base; }

}  // namespace ftl
