#include "ftl/archive.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>

#include "ftl/error.hpp"

namespace ftl {

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'T', 'L', 'B'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kFixed = 56;

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  if (at + static_cast<std::size_t>(bytes) > in.size()) throw LabelError("archive truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

// Fixed part of the header; returns the edge count that follows it.
std::uint64_t parse_fixed(std::span<const std::uint8_t> in, ArchiveHeader& h) {
  if (in.size() < kFixed || std::memcmp(in.data(), kMagic.data(), 4) != 0) throw LabelError("not a label archive");
  if (in[4] != kVersion) throw LabelError("unsupported archive version");
  if (in[5] < 1 || in[5] > 5) throw LabelError("unknown scheme tag");
  h.scheme = static_cast<Scheme>(in[5]);
  h.f = in[6];
  h.certificate = in[7] & 1U;
  h.n = static_cast<Vertex>(get_le(in, 8, 4));
  h.source = static_cast<Vertex>(get_le(in, 12, 4));
  h.m = get_le(in, 16, 8);
  h.seed = get_le(in, 24, 8);
  h.graph_hash = get_le(in, 32, 8);
  h.records = get_le(in, 40, 8);
  std::uint64_t edges = get_le(in, 48, 8);
  if (h.n < 0 || edges > (std::uint64_t{1} << 40) || h.records > (std::uint64_t{1} << 40)) throw LabelError("corrupt archive header");
  return edges;
}

void parse_edges(std::span<const std::uint8_t> in, std::uint64_t count, ArchiveHeader& h) {
  h.edges.resize(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    h.edges[k].u = static_cast<Vertex>(get_le(in, 8 * k, 4));
    h.edges[k].v = static_cast<Vertex>(get_le(in, 8 * k + 4, 4));
  }
}

std::vector<std::uint64_t> parse_offsets(std::span<const std::uint8_t> in, std::uint64_t records) {
  std::vector<std::uint64_t> off(records + 1);
  for (std::uint64_t i = 0; i <= records; ++i) off[i] = get_le(in, 8 * i, 8);
  for (std::uint64_t i = 0; i < records; ++i)
    if (off[i] > off[i + 1]) throw LabelError("corrupt archive offset table");
  return off;
}

template <class L, class Read>
L parse_record(std::span<const std::uint8_t> rec, Vertex n, Read read) {
  BitReader r(rec, vertex_bits(n));
  L l = read(r);
  r.expect_end();
  return l;
}

Vertex owner_of(const Label1Vft& l) { return l.owner.id; }
Vertex owner_of(const LabelSs2& l) { return l.owner.id; }
Vertex owner_of(const Label2Vft& l) { return l.owner().id; }
Vertex owner_of(const EftVertexLabel& l) { return l.id; }
Vertex owner_of(const LabelFvft& l) { return l.id; }

template <class L>
void expect_owner(const L& l, Vertex v) {
  if (owner_of(l) != v) throw LabelError("record " + std::to_string(v) + " belongs to another vertex");
}

void expect_edge(const EftEdgeLabel& l, const Edge& e) {
  if (l.eid.u != e.u || l.eid.v != e.v) throw LabelError("edge record belongs to another edge");
}

std::size_t edge_index(const ArchiveHeader& h, Edge e) {
  if (e.u > e.v) std::swap(e.u, e.v);
  auto it = std::lower_bound(h.edges.begin(), h.edges.end(), e);
  if (it == h.edges.end() || *it != e)
    throw InputError("no edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " in the labelled graph");
  return static_cast<std::size_t>(it - h.edges.begin());
}

struct MemorySource {
  const LabelSet& l;
  const Label1Vft& one(Vertex v) { return l.one.at(static_cast<std::size_t>(v)); }
  const LabelSs2& ss2(Vertex v) { return l.ss2.at(static_cast<std::size_t>(v)); }
  const Label2Vft& two(Vertex v) { return l.two.at(static_cast<std::size_t>(v)); }
  const EftVertexLabel& eftv(Vertex v) { return l.eft_vertex.at(static_cast<std::size_t>(v)); }
  const EftEdgeLabel& efte(std::size_t k) { return l.eft_edge.at(k); }
  const LabelFvft& fvft(Vertex v) { return l.fvft.at(static_cast<std::size_t>(v)); }
};

struct FileSource {
  ArchiveFile& file;
  const ArchiveHeader& h;
  std::map<Vertex, Label1Vft> one_;
  std::map<Vertex, LabelSs2> ss2_;
  std::map<Vertex, Label2Vft> two_;
  std::map<Vertex, EftVertexLabel> eftv_;
  std::map<std::size_t, EftEdgeLabel> efte_;
  std::map<Vertex, LabelFvft> fvft_;

  template <class L, class Read>
  const L& fetch(std::map<Vertex, L>& cache, Vertex v, Read read) {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    L l = parse_record<L>(file.record(static_cast<std::uint64_t>(v)), h.n, read);
    expect_owner(l, v);
    return cache.emplace(v, std::move(l)).first->second;
  }
  const Label1Vft& one(Vertex v) { return fetch(one_, v, read_label1); }
  const LabelSs2& ss2(Vertex v) { return fetch(ss2_, v, read_label_ss2); }
  const Label2Vft& two(Vertex v) { return fetch(two_, v, read_label_2vft); }
  const EftVertexLabel& eftv(Vertex v) { return fetch(eftv_, v, read_eft_vertex); }
  const LabelFvft& fvft(Vertex v) { return fetch(fvft_, v, read_label_fvft); }
  const EftEdgeLabel& efte(std::size_t k) {
    auto it = efte_.find(k);
    if (it != efte_.end()) return it->second;
    auto l = parse_record<EftEdgeLabel>(file.record(static_cast<std::uint64_t>(h.n) + k), h.n, read_eft_edge);
    expect_edge(l, h.edges[k]);
    return efte_.emplace(k, std::move(l)).first->second;
  }
};

template <class Src>
bool run_query(const ArchiveHeader& h, Src& src, Vertex u, Vertex v, std::span<const Vertex> fail,
               std::span<const Edge> fail_edges, Coverage* cov, FvftTrace* trace) {
  auto in_range = [&](Vertex x) {
    if (x < 0 || x >= h.n) throw InputError("vertex " + std::to_string(x) + " out of range");
  };
  in_range(u);
  in_range(v);
  for (Vertex x : fail) in_range(x);
  if (auto b = fault_budget(h.scheme, h.f); b && fail.size() > *b)
    throw InputError(std::string(scheme_name(h.scheme)) + " labels tolerate at most " + std::to_string(*b) + " faults");

  if (h.scheme == Scheme::eft) {
    if (!fail.empty()) throw InputError("eft labels take edge faults");
    std::vector<EftEdgeLabel> fs;
    for (const Edge& e : fail_edges) fs.push_back(src.efte(edge_index(h, e)));
    return decode_eft(src.eftv(u), src.eftv(v), fs);
  }
  if (!fail_edges.empty()) throw InputError("vertex-fault labels take vertex faults");
  for (Vertex x : fail)
    if (x == u || x == v) return false;
  if (u == v) return true;

  switch (h.scheme) {
    case Scheme::vft1:
      if (fail.empty()) return decode_0vft(src.one(u), src.one(v));
      return decode_1vft(src.one(u), src.one(v), src.one(fail[0]));
    case Scheme::ss2vft: {
      if (u != h.source && v != h.source)
        throw InputError("single-source labels answer queries that involve source " + std::to_string(h.source));
      Vertex t = u == h.source ? v : u;
      const LabelSs2& lt = src.ss2(t);
      if (fail.empty()) return lt.reachable;
      const LabelSs2& x = src.ss2(fail[0]);
      const LabelSs2& y = fail.size() > 1 ? src.ss2(fail[1]) : x;
      return decode_ss2(lt, x, y, cov);
    }
    case Scheme::vft2: {
      if (fail.empty()) return decode_0vft(src.two(u).one, src.two(v).one);
      const Label2Vft& x = src.two(fail[0]);
      const Label2Vft& y = fail.size() > 1 ? src.two(fail[1]) : x;
      return decode_2vft(src.two(u), src.two(v), x, y, cov);
    }
    case Scheme::fvft: {
      std::vector<const LabelFvft*> fs;
      for (Vertex x : fail) fs.push_back(&src.fvft(x));
      return decode_fvft(src.fvft(u), src.fvft(v), fs, trace);
    }
    case Scheme::eft:
      break;
  }
  throw LabelError("unknown scheme");
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::vft1: return "1vft";
    case Scheme::ss2vft: return "ss2vft";
    case Scheme::vft2: return "2vft";
    case Scheme::eft: return "eft";
    case Scheme::fvft: return "fvft";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  for (Scheme x : {Scheme::vft1, Scheme::ss2vft, Scheme::vft2, Scheme::eft, Scheme::fvft})
    if (scheme_name(x) == s) return x;
  return std::nullopt;
}

bool randomized(Scheme s) { return s == Scheme::eft || s == Scheme::fvft; }

std::optional<std::size_t> fault_budget(Scheme s, int f) {
  switch (s) {
    case Scheme::vft1: return 1;
    case Scheme::ss2vft:
    case Scheme::vft2: return 2;
    case Scheme::fvft: return static_cast<std::size_t>(f);
    case Scheme::eft: return std::nullopt;
  }
  return std::nullopt;
}

LabelSet build_labels(const Graph& g, const BuildSpec& spec) {
  LabelSet out;
  out.scheme = spec.scheme;
  switch (spec.scheme) {
    case Scheme::vft1: {
      Graph gc = spec.certificate ? sparse_certificate(g, 2) : g;
      Hld h(gc);
      out.one = encode_1vft(gc, h, spec.encode);
      break;
    }
    case Scheme::ss2vft: {
      if (!g.contains(spec.source)) throw InputError("source out of range");
      Graph gc = spec.certificate ? sparse_certificate(g, 3) : g;
      Hld h(gc, spec.source);
      out.ss2 = encode_ss2(gc, h, spec.encode);
      break;
    }
    case Scheme::vft2:
      out.two = encode_2vft(g, spec.encode, spec.certificate);
      break;
    case Scheme::eft: {
      Hld h(g);
      auto l = encode_eft(g, h, spec.seed, spec.encode, spec.c1);
      out.eft_vertex = std::move(l.vertex);
      out.eft_edge = std::move(l.edge);
      break;
    }
    case Scheme::fvft: {
      FvftOptions o;
      o.f = spec.f;
      o.seed = spec.seed;
      o.certificate = spec.certificate;
      o.threshold = spec.threshold;
      o.c1 = spec.c1;
      o.encode = spec.encode;
      out.fvft = encode_fvft(g, o);
      break;
    }
  }
  return out;
}

Archive make_archive(const Graph& g, const BuildSpec& spec, const LabelSet& labels) {
  Archive a;
  ArchiveHeader& h = a.header;
  h.scheme = spec.scheme;
  h.f = spec.scheme == Scheme::fvft ? spec.f : 0;
  h.certificate = spec.scheme != Scheme::eft && spec.certificate;
  h.n = g.n();
  h.source = spec.scheme == Scheme::ss2vft ? spec.source : 0;
  h.m = g.m();
  h.seed = randomized(spec.scheme) ? spec.seed : 0;
  h.graph_hash = g.fingerprint();
  if (spec.scheme == Scheme::eft) h.edges = g.edges();
  const int vb = vertex_bits(g.n());
  auto add = [&](const auto& l) {
    BitWriter w(vb);
    write_label(w, l);
    a.records.push_back(w.bytes());
  };
  for (const auto& l : labels.one) add(l);
  for (const auto& l : labels.ss2) add(l);
  for (const auto& l : labels.two) add(l);
  for (const auto& l : labels.eft_vertex) add(l);
  for (const auto& l : labels.eft_edge) add(l);
  for (const auto& l : labels.fvft) add(l);
  h.records = a.records.size();
  return a;
}

std::vector<std::uint8_t> to_bytes(const Archive& a) {
  const ArchiveHeader& h = a.header;
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(h.scheme));
  out.push_back(static_cast<std::uint8_t>(h.f));
  out.push_back(h.certificate ? 1 : 0);
  put_le(out, static_cast<std::uint32_t>(h.n), 4);
  put_le(out, static_cast<std::uint32_t>(h.source), 4);
  put_le(out, h.m, 8);
  put_le(out, h.seed, 8);
  put_le(out, h.graph_hash, 8);
  put_le(out, a.records.size(), 8);
  put_le(out, h.edges.size(), 8);
  for (const Edge& e : h.edges) {
    put_le(out, static_cast<std::uint32_t>(e.u), 4);
    put_le(out, static_cast<std::uint32_t>(e.v), 4);
  }
  std::uint64_t at = 0;
  put_le(out, at, 8);
  for (const auto& r : a.records) {
    at += r.size();
    put_le(out, at, 8);
  }
  for (const auto& r : a.records) out.insert(out.end(), r.begin(), r.end());
  return out;
}

Archive from_bytes(std::span<const std::uint8_t> bytes) {
  Archive a;
  std::uint64_t edges = parse_fixed(bytes, a.header);
  std::size_t at = kFixed;
  if (bytes.size() < at + 8 * edges) throw LabelError("archive truncated");
  parse_edges(bytes.subspan(at, 8 * edges), edges, a.header);
  at += 8 * edges;
  if (bytes.size() < at + 8 * (a.header.records + 1)) throw LabelError("archive truncated");
  auto off = parse_offsets(bytes.subspan(at), a.header.records);
  at += 8 * (a.header.records + 1);
  if (bytes.size() != at + off.back()) throw LabelError("archive size does not match its offset table");
  for (std::uint64_t i = 0; i < a.header.records; ++i)
    a.records.emplace_back(bytes.begin() + static_cast<std::ptrdiff_t>(at + off[i]),
                           bytes.begin() + static_cast<std::ptrdiff_t>(at + off[i + 1]));
  return a;
}

LabelSet decode_all(const Archive& a) {
  const ArchiveHeader& h = a.header;
  LabelSet out;
  out.scheme = h.scheme;
  const auto n = static_cast<std::uint64_t>(h.n);
  const std::uint64_t expect = h.scheme == Scheme::eft ? n + h.edges.size() : n;
  if (a.records.size() != expect) throw LabelError("archive has the wrong number of records");
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto& rec = a.records[i];
    const auto v = static_cast<Vertex>(i);
    switch (h.scheme) {
      case Scheme::vft1: out.one.push_back(parse_record<Label1Vft>(rec, h.n, read_label1)); expect_owner(out.one.back(), v); break;
      case Scheme::ss2vft: out.ss2.push_back(parse_record<LabelSs2>(rec, h.n, read_label_ss2)); expect_owner(out.ss2.back(), v); break;
      case Scheme::vft2: out.two.push_back(parse_record<Label2Vft>(rec, h.n, read_label_2vft)); expect_owner(out.two.back(), v); break;
      case Scheme::eft: out.eft_vertex.push_back(parse_record<EftVertexLabel>(rec, h.n, read_eft_vertex)); expect_owner(out.eft_vertex.back(), v); break;
      case Scheme::fvft: out.fvft.push_back(parse_record<LabelFvft>(rec, h.n, read_label_fvft)); expect_owner(out.fvft.back(), v); break;
    }
  }
  for (std::size_t k = 0; k < h.edges.size(); ++k) {
    out.eft_edge.push_back(parse_record<EftEdgeLabel>(a.records[n + k], h.n, read_eft_edge));
    expect_edge(out.eft_edge.back(), h.edges[k]);
  }
  return out;
}

ArchiveFile::ArchiveFile(const std::string& path) : in_(path, std::ios::binary) {
  if (!in_) throw InputError("cannot open " + path);
  auto read = [&](std::size_t count) {
    std::vector<std::uint8_t> buf(count);
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in_.gcount()) != count) throw LabelError("archive truncated");
    return buf;
  };
  auto fixed = read(kFixed);
  std::uint64_t edges = parse_fixed(fixed, header_);
  parse_edges(read(8 * edges), edges, header_);
  offsets_ = parse_offsets(read(8 * (header_.records + 1)), header_.records);
  data_start_ = kFixed + 8 * edges + 8 * (header_.records + 1);
}

std::vector<std::uint8_t> ArchiveFile::record(std::uint64_t i) {
  if (i >= header_.records) throw LabelError("record index beyond the archive");
  std::vector<std::uint8_t> buf(offsets_[i + 1] - offsets_[i]);
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(data_start_ + offsets_[i]));
  in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in_.gcount()) != buf.size()) throw LabelError("archive truncated");
  ++reads_;
  return buf;
}

bool query(ArchiveFile& file, Vertex u, Vertex v, std::span<const Vertex> fail, std::span<const Edge> fail_edges) {
  FileSource src{file, file.header(), {}, {}, {}, {}, {}, {}};
  return run_query(file.header(), src, u, v, fail, fail_edges, nullptr, nullptr);
}

bool query(const LabelSet& labels, const ArchiveHeader& h, Vertex u, Vertex v, std::span<const Vertex> fail,
           std::span<const Edge> fail_edges, Coverage* cov, FvftTrace* trace) {
  MemorySource src{labels};
  return run_query(h, src, u, v, fail, fail_edges, cov, trace);
}

}  // namespace ftl
