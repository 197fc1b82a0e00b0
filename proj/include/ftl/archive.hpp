#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftl/eft.hpp"
#include "ftl/graph.hpp"
#include "ftl/options.hpp"
#include "ftl/ssvft.hpp"
#include "ftl/vft1.hpp"
#include "ftl/vft2.hpp"
#include "ftl/vftf.hpp"

namespace ftl {

enum class Scheme : std::uint8_t { vft1 = 1, ss2vft = 2, vft2 = 3, eft = 4, fvft = 5 };

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view s);
bool randomized(Scheme s);
// Largest fault set the scheme answers; eft has no budget.
std::optional<std::size_t> fault_budget(Scheme s, int f);

struct BuildSpec {
  Scheme scheme = Scheme::vft2;
  int f = 0;                 // fvft only
  std::uint64_t seed = 0;    // eft and fvft
  bool certificate = true;   // ignored by eft, which labels the edges of the input graph
  Vertex source = 0;         // ss2vft only
  int c1 = 16;
  std::optional<std::int64_t> threshold{};
  EncodeOptions encode{};
};

// Decoded labels of one scheme; only the member for that scheme is filled.
struct LabelSet {
  Scheme scheme = Scheme::vft2;
  std::vector<Label1Vft> one;
  std::vector<LabelSs2> ss2;
  std::vector<Label2Vft> two;
  std::vector<EftVertexLabel> eft_vertex;
  std::vector<EftEdgeLabel> eft_edge;
  std::vector<LabelFvft> fvft;
};

LabelSet build_labels(const Graph& g, const BuildSpec& spec);

struct ArchiveHeader {
  Scheme scheme = Scheme::vft2;
  int f = 0;
  bool certificate = false;
  Vertex n = 0;
  Vertex source = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_hash = 0;
  std::vector<Edge> edges;  // eft only: record n+k labels edges[k]
  std::uint64_t records = 0;
};

struct Archive {
  ArchiveHeader header;
  std::vector<std::vector<std::uint8_t>> records;
};

Archive make_archive(const Graph& g, const BuildSpec& spec, const LabelSet& labels);
inline Archive make_archive(const Graph& g, const BuildSpec& spec) { return make_archive(g, spec, build_labels(g, spec)); }
std::vector<std::uint8_t> to_bytes(const Archive& a);
// Throws LabelError on anything that is not a well-formed archive.
Archive from_bytes(std::span<const std::uint8_t> bytes);
LabelSet decode_all(const Archive& a);

// Reads the header and offset table up front, then single records on demand.
class ArchiveFile {
 public:
  explicit ArchiveFile(const std::string& path);
  const ArchiveHeader& header() const { return header_; }
  std::vector<std::uint8_t> record(std::uint64_t i);
  std::uint64_t records_read() const { return reads_; }

 private:
  std::ifstream in_;
  ArchiveHeader header_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t data_start_ = 0;
  std::uint64_t reads_ = 0;
};

// Connectivity of u and v with the given vertex faults (or edge faults for eft), decoded
// from the records of u, v and the faults only. InputError: out of range or over budget;
// LabelError: records that do not fit together.
bool query(ArchiveFile& file, Vertex u, Vertex v, std::span<const Vertex> fail, std::span<const Edge> fail_edges = {});
// Same on labels already in memory.
bool query(const LabelSet& labels, const ArchiveHeader& h, Vertex u, Vertex v, std::span<const Vertex> fail,
           std::span<const Edge> fail_edges = {}, Coverage* cov = nullptr, FvftTrace* trace = nullptr);

}  // namespace ftl
