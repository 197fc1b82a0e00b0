#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftl/bitio.hpp"
#include "ftl/eft.hpp"
#include "ftl/graph.hpp"
#include "ftl/options.hpp"
#include "ftl/vft2.hpp"

namespace ftl {

// ceil(2f * n^(1 - 1/2^(f-2))). Throws InputError for f < 3.
std::int64_t degree_threshold(int f, Vertex n);
// 2^(f-2) * f * n^(1 - 1/2^(f-2)) * c * log2(n)^3.
double predicted_size_bound(int f, Vertex n, double c);

struct FvftOptions {
  int f = 3;
  std::uint64_t seed = 0;
  bool certificate = true;              // sparsify to a (f+1)-certificate first
  std::optional<std::int64_t> threshold{};  // replaces degree_threshold at every level
  int c1 = 16;                          // sketch units per log2 n
  int max_f = 5;
  EncodeOptions encode{};
};

struct LabelFvft {
  int f = 2;
  std::uint64_t instance = 0;  // certificate graph, f, seed and the high-degree set
  Vertex id = kNoVertex;
  Vertex base = kNoVertex;     // largest vertex of the owner's component
  std::optional<Label2Vft> two;  // f == 2

  // f >= 3
  bool high = false;  // owner has degree >= threshold in the sparsified graph
  std::optional<EftVertexLabel> eft;
  std::vector<EftEdgeLabel> low_edges;  // every incident edge, low owners only
  std::vector<Vertex> nested_at;        // high vertices other than the owner, ascending
  std::vector<LabelFvft> nested;        // owner's (f-1)-label in the graph minus nested_at[i]

  friend bool operator==(const LabelFvft&, const LabelFvft&) = default;
};

void write_label(BitWriter& w, const LabelFvft& l);
LabelFvft read_label_fvft(BitReader& r);

std::vector<LabelFvft> encode_fvft(const Graph& g, const FvftOptions& opt);

// Serialized size of every label, computed one nested instance at a time so that large n
// never holds all nested labels at once. level_payload[d] counts payload bits at nesting depth d.
struct FvftSize {
  std::size_t total = 0;
  std::size_t payload = 0;
  std::vector<std::size_t> level_payload;
};
std::vector<FvftSize> fvft_label_sizes(const Graph& g, const FvftOptions& opt);
FvftSize measure(const LabelFvft& l, Vertex n);

// Which machinery a query went through.
struct FvftTrace {
  int high_steps = 0;  // recursions into a graph minus a high-degree fault
  int eft_calls = 0;
  bool base_2vft = false;
};

// Are u and v connected once the vertices of F fail, |F| <= f. Exact unless the query reaches
// the edge-fault branch, which is correct with high probability.
bool decode_fvft(const LabelFvft& u, const LabelFvft& v, std::span<const LabelFvft* const> faults,
                 FvftTrace* trace = nullptr);
inline bool decode_fvft(const LabelFvft& u, const LabelFvft& v, std::span<const LabelFvft> faults,
                        FvftTrace* trace = nullptr) {
  std::vector<const LabelFvft*> ptrs;
  for (const auto& x : faults) ptrs.push_back(&x);
  return decode_fvft(u, v, ptrs, trace);
}

}  // namespace ftl
