#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/coverage.hpp"
#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/options.hpp"

namespace ftl {

// Single-source, single-fault label: does t still reach the source once x fails.
struct LabelSs1f {
  std::uint64_t instance = 0;
  ExtendedId owner;
  bool reachable = false;        // owner lies in the source's component
  std::vector<bool> bits;        // conn(s,c,G-{par c}) for the light c on T[s,owner], top-down
  std::optional<bool> heavy_bit;  // conn(s,h(owner),G-{owner})
  friend bool operator==(const LabelSs1f&, const LabelSs1f&) = default;
};

// Bits below are all conn(s, b', G - {b, w}) for w running over an upper interesting set,
// stored at index nl(w).
struct DownPart {
  std::optional<ExtendedId> alpha, beta;
  std::vector<bool> bits;  // over I_up(alpha)
  friend bool operator==(const DownPart&, const DownPart&) = default;
};

struct UpPart {
  std::optional<ExtendedId> a;
  bool conn_a = false;     // conn(s,b',G-{b,a})
  std::vector<bool> bits;  // over I_up(b')
  friend bool operator==(const UpPart&, const UpPart&) = default;
};

// One heavy path Q and the vertex recorded for it (b_{u,Q} or d_{u,Q}).
struct PathMark {
  Vertex path = kNoVertex;
  std::optional<ExtendedId> mark;
  bool conn = false;  // b-list only: conn(s,h(u),G-{u,b})
  friend bool operator==(const PathMark&, const PathMark&) = default;
};

struct UpTail {
  std::optional<ExtendedId> c;  // c_u
  std::optional<ExtendedId> q;  // q_{h(u)}
  std::vector<PathMark> b_list;
  friend bool operator==(const UpTail&, const UpTail&) = default;
};

// Restricted labels: the Down and Up parts for h(u) only.
struct LabelDPrime {
  ExtendedId owner;
  std::optional<DownPart> heavy;
  friend bool operator==(const LabelDPrime&, const LabelDPrime&) = default;
};
struct LabelUPrime {
  ExtendedId owner;
  std::optional<UpPart> heavy;
  UpTail tail;
  friend bool operator==(const LabelUPrime&, const LabelUPrime&) = default;
};

struct SidePart {
  std::optional<LabelSs1f> owner_sub;  // SS1F(owner, G-{b}); light entries only
  std::optional<LabelSs1f> child_sub;  // SS1F(b', G-{b}); absent when b is the source
  std::optional<ExtendedId> g;
  bool conn_g = false;
  std::optional<LabelDPrime> g_down;
  std::optional<LabelUPrime> g_up;
  std::vector<bool> g_bits;  // over I_up(g)
  friend bool operator==(const SidePart&, const SidePart&) = default;
};

struct InPart {
  std::optional<ExtendedId> ell;
  std::vector<bool> bits;  // over I_up(ell)
  friend bool operator==(const InPart&, const InPart&) = default;
};

struct Ss2Entry {
  ExtendedId parent, child;  // b, b'
  DownPart down;
  UpPart up;
  SidePart side;
  InPart in;
  friend bool operator==(const Ss2Entry&, const Ss2Entry&) = default;
};

struct LabelSs2 {
  std::uint64_t instance = 0;
  ExtendedId owner;
  bool reachable = false;
  LabelSs1f ss1;
  std::vector<Ss2Entry> entries;  // one per member of I(owner)
  UpTail tail;                    // c_owner, q_{h(owner)}, b-list
  std::vector<PathMark> d_list;   // d_{owner,Q} for Q meeting T[s, ell_{h(owner)}]
  friend bool operator==(const LabelSs2&, const LabelSs2&) = default;
};

// D'/U' of the owner, read off its full label.
LabelDPrime dprime_of(const LabelSs2& l);
LabelUPrime uprime_of(const LabelSs2& l);

void write_label(BitWriter& w, const LabelSs1f& l);
LabelSs1f read_label_ss1f(BitReader& r);
void write_label(BitWriter& w, const LabelDPrime& l);
LabelDPrime read_label_dprime(BitReader& r);
void write_label(BitWriter& w, const LabelUPrime& l);
LabelUPrime read_label_uprime(BitReader& r);
void write_label(BitWriter& w, const LabelSs2& l);
LabelSs2 read_label_ss2(BitReader& r);

// SS1F label of t from per-child bits conn(root,c,G-{par c}) indexed by vertex.
LabelSs1f make_ss1f(const Hld& h, Vertex t, std::uint64_t instance, bool reachable, std::span<const char> conn);

// h must be rooted at the source (Hld(g, s)). Vertices outside the source's component get
// labels marked unreachable.
std::vector<LabelSs1f> encode_ss1f(const Graph& g, const Hld& h, const EncodeOptions& opt = {});
std::vector<LabelSs2> encode_ss2(const Graph& g, const Hld& h, const EncodeOptions& opt = {});

bool decode_ss1f(const LabelSs1f& t, const LabelSs1f& x);
// Source-t connectivity with x and y failed.
bool decode_ss2(const LabelSs2& t, const LabelSs2& x, const LabelSs2& y, Coverage* cov = nullptr);
// Promise: t,y in T_{h(x)} and y not on T[h(x),t].
bool decode_dprime(const LabelDPrime& t, const LabelDPrime& x, const LabelDPrime& y);
// Promise: t in T_{h(x)} and x in T_{h(y)}.
bool decode_uprime(const LabelUPrime& t, const LabelUPrime& x, const LabelUPrime& y);

}  // namespace ftl
