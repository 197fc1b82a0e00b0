#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/options.hpp"
#include "ftl/ssvft.hpp"
#include "ftl/vft1.hpp"

namespace ftl {

// Facts about a non-root vertex c with b = par(c), all computed in the task of b.
struct ChildFacts {
  bool conn_s = false;      // conn(s,c,G-{b})
  Vertex cid = kNoVertex;   // CID(c,G-{b})
  std::optional<Vertex> ell, q, g, f, alpha, beta, a;
  bool conn_a = false;      // conn(s,c,G-{b,a})
  bool conn_g = false;      // conn(s,c,G-{b,g})
  // conn(s,c,G-{b,w}) for w over I_up(alpha), I_up(c), I_up(ell), I_up(g), at index nl(w).
  std::vector<bool> down_bits, up_bits, in_bits, g_bits;
  std::optional<LabelSs1f> sub_ss1;  // SS1F(c,G-{b}); absent when b is the root

  // All-pairs extras.
  struct PSub {
    Vertex c = kNoVertex;
    Vertex cid = kNoVertex;  // CID(b',G-{b,c})
    bool conn_hb = false;    // conn(b',h(b),G-{b,c})
    bool conn_hc = false;    // conn(b',h(c),G-{b,c})
  };
  std::vector<PSub> psubs;  // over I_up(ell)
  bool conn_par = false;    // conn(c,par(b),G-{b,f})
  Vertex cid_path = kNoVertex;  // CID(c,G-T[s,b])
  std::optional<Label1Vft> sub_1vft;  // 1-VFT label of c in G-{b}
};

struct VertexFacts {
  std::optional<Vertex> c;  // c_u
  struct BMark {
    Vertex path;
    std::optional<Vertex> b;
    bool conn = false;
  };
  struct DMark {
    Vertex path;
    std::optional<Vertex> d;
  };
  std::vector<BMark> b_list;
  std::vector<DMark> d_list;
};

// Facts about a and one light ancestor edge (b, c), c on T[s,a].
struct AncestorFacts {
  Vertex b = kNoVertex;
  std::optional<LabelSs1f> sub_ss1;   // SS1F(a,G-{b})
  std::optional<Label1Vft> sub_1vft;  // 1-VFT label of a in G-{b} (all-pairs)
  std::vector<Vertex> anset;          // AnSet(a,b), ascending
  Vertex cid_outside = kNoVertex;     // CID(a, G - T+_{h(b)})
};

struct FaultTables {
  std::uint64_t instance = 0;
  std::vector<ChildFacts> child;                    // by vertex
  std::vector<VertexFacts> vertex;                  // by vertex
  std::vector<std::vector<AncestorFacts>> ancestors;  // by vertex, one per light vertex on its root path
};

// One task per vertex with children; all_pairs adds the facts only the 2-VFT scheme needs.
FaultTables build_fault_tables(const Graph& g, const Hld& h, bool all_pairs, const EncodeOptions& opt = {});

// SS2 labels from prebuilt tables. With every_root each vertex is labelled relative to the
// root of its own tree; otherwise only the first root's tree is reachable.
std::vector<LabelSs2> assemble_ss2(const Hld& h, const FaultTables& tables, bool every_root,
                                   const EncodeOptions& opt = {});

}  // namespace ftl
