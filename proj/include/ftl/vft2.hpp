#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/coverage.hpp"
#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/options.hpp"
#include "ftl/ssvft.hpp"
#include "ftl/vft1.hpp"

namespace ftl {

// Entries of the P, AH and dep sublabels follow I(owner): the light vertices of T[s,owner] by
// depth, then h(owner). The entry whose child hangs below b is therefore at index nl(b), and
// each entry keeps its b for validation.

// Facts for one c in I_up(ell_{b'}), indexed by nl(c).
struct PSub {
  Vertex cid = kNoVertex;  // CID(b',G-{b,c})
  bool conn_hb = false;    // conn(b',h(b),G-{b,c})
  bool conn_hc = false;    // conn(b',h(c),G-{b,c})
  friend bool operator==(const PSub&, const PSub&) = default;
};

struct PEntry {
  Vertex parent = kNoVertex;       // b
  std::optional<ExtendedId> ell;   // ell_{b'}
  std::vector<PSub> subs;
  friend bool operator==(const PEntry&, const PEntry&) = default;
};

struct LabelP {
  std::vector<PEntry> entries;
  friend bool operator==(const LabelP&, const LabelP&) = default;
};

struct AhEntry {
  Vertex parent = kNoVertex;     // b
  std::optional<ExtendedId> f;   // f_{b'}
  bool conn_par = false;         // conn(b',par(b),G-{b,f_{b'}})
  Vertex cid_path = kNoVertex;   // CID(b',G-T[s,b])
  friend bool operator==(const AhEntry&, const AhEntry&) = default;
};

struct LabelAh {
  ExtendedId owner;
  std::vector<AhEntry> entries;
  friend bool operator==(const LabelAh&, const LabelAh&) = default;
};

struct DepEntry {
  Vertex parent = kNoVertex;
  // Light child: the owner's 1-VFT label in G-{b}, AnSet(owner,b) with AH labels, and the
  // owner's component in G-T+_{h(b)}. Heavy child: the 1-VFT label of h(owner) in G-{owner}.
  std::optional<Label1Vft> sub;
  std::vector<LabelAh> anset;
  Vertex cid_outside = kNoVertex;
  friend bool operator==(const DepEntry&, const DepEntry&) = default;
};

struct LabelDep {
  LabelAh ah;
  std::vector<DepEntry> entries;
  friend bool operator==(const LabelDep&, const LabelDep&) = default;
};

struct Label2Vft {
  Label1Vft one;         // carries instance, owner and base component
  Label1Vft source_one;  // 1-VFT label of the root of the owner's tree
  LabelSs2 ss2;          // relative to that root
  LabelP p;
  LabelDep dep;
  std::uint64_t instance() const { return one.instance; }
  const ExtendedId& owner() const { return one.owner; }
  Vertex base() const { return one.base; }
  friend bool operator==(const Label2Vft&, const Label2Vft&) = default;
};

void write_label(BitWriter& w, const LabelP& l);
LabelP read_label_p(BitReader& r);
void write_label(BitWriter& w, const LabelAh& l);
LabelAh read_label_ah(BitReader& r);
void write_label(BitWriter& w, const LabelDep& l);
LabelDep read_label_dep(BitReader& r);
void write_label(BitWriter& w, const Label2Vft& l);
Label2Vft read_label_2vft(BitReader& r);

// With use_certificate the labels describe the sparse 3-connectivity certificate of g,
// which answers every query with at most two faults the same way g does.
std::vector<Label2Vft> encode_2vft(const Graph& g, const EncodeOptions& opt = {}, bool use_certificate = true);
// Same, on a tree the caller already built for g.
std::vector<Label2Vft> encode_2vft(const Graph& g, const Hld& h, const EncodeOptions& opt = {});

// What property (P) reveals about w in G-{x,y}: connectivity to h(x) and h(y) (false when
// absent), and w's component whenever w is cut off from one of them.
struct PAnswer {
  bool to_hx = false;
  bool to_hy = false;
  std::optional<Vertex> cid;
};

// Preconditions are the caller's: x,y independent and (C1)-(C3) hold.
PAnswer decode_property_p(const LabelP& w, const ExtendedId& wid, const LabelP& x, const ExtendedId& xid,
                          const LabelP& y, const ExtendedId& yid, Coverage* cov = nullptr);
// All-heavy promise: u,v,y in T_{h(x)}, (C1)(C2) hold.
bool decode_ah(const LabelAh& u, const LabelAh& v, const LabelAh& x, const LabelAh& y, Coverage* cov = nullptr);
// x,y independent, (C1)(C2) hold.
bool decode_ind(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y,
                Coverage* cov = nullptr);
// x a strict ancestor of y, (C1)(C2) hold.
bool decode_dep(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y,
                Coverage* cov = nullptr);
// Full query: are u and v connected in G-{x,y}.
bool decode_2vft(const Label2Vft& u, const Label2Vft& v, const Label2Vft& x, const Label2Vft& y,
                 Coverage* cov = nullptr);

}  // namespace ftl
