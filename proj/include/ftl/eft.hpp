#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/graph.hpp"
#include "ftl/hld.hpp"
#include "ftl/options.hpp"
#include "ftl/sketch.hpp"

namespace ftl {

// Sketches are immutable once built and shared between the labels that carry them: the
// subtree sketch of c sits in c's vertex label and in the label of the edge (par(c),c).

struct EftVertexLabel {
  SchemeSpec spec;
  Vertex id = kNoVertex;
  Vertex tin = 0;
  Vertex base = kNoVertex;                // largest vertex of the component
  std::shared_ptr<const Sketch> subtree;  // sketch of T_id
  friend bool operator==(const EftVertexLabel& a, const EftVertexLabel& b);
};

struct EftEdgeLabel {
  SchemeSpec spec;
  EdgeWord eid;
  Vertex base = kNoVertex;
  bool tree = false;
  // Tree edges only: which endpoint is the child, where its subtree ends, and its sketch.
  bool child_is_v = false;
  Vertex child_tout = 0;
  std::shared_ptr<const Sketch> subtree;
  friend bool operator==(const EftEdgeLabel& a, const EftEdgeLabel& b);
};

struct EftLabels {
  SchemeParams params;
  std::vector<EftVertexLabel> vertex;
  std::vector<EftEdgeLabel> edge;  // aligned with g.edges()
  // Label of edge {a,b}; throws InputError when absent.
  const EftEdgeLabel& edge_label(const Graph& g, Vertex a, Vertex b) const;
};

// h must be a spanning forest of g (Hld(g) or Hld(g,s)).
EftLabels encode_eft(const Graph& g, const Hld& h, std::uint64_t seed, const EncodeOptions& opt = {}, int c1 = 16);

// Are u and v connected once the given edges fail. Correct with high probability; throws
// LabelError when the labels come from different schemes.
bool decode_eft(const EftVertexLabel& u, const EftVertexLabel& v, std::span<const EftEdgeLabel> failed);

void write_label(BitWriter& w, const EftVertexLabel& l);
EftVertexLabel read_eft_vertex(BitReader& r);
void write_label(BitWriter& w, const EftEdgeLabel& l);
EftEdgeLabel read_eft_edge(BitReader& r);

}  // namespace ftl
