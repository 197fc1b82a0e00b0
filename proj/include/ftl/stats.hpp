#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftl/archive.hpp"

namespace ftl {

// Label sizes in payload bits: instance hashes and sketch scheme headers are left out.
struct SizeStats {
  Scheme scheme = Scheme::vft2;
  Vertex n = 0;
  std::uint64_t m = 0;
  std::size_t max_bits = 0;
  double mean_bits = 0;
  std::vector<std::pair<std::string, std::size_t>> parts;  // largest value of each sublabel
  double build_seconds = 0;
  double eft_constant = 0;  // fvft: largest EFT edge label over log2(n)^3
  double bound = 0;         // fvft: predicted_size_bound(f, n, eft_constant)
};

// fvft sizes are counted one nested instance at a time, so large n stays within memory.
SizeStats size_stats(const Graph& g, const BuildSpec& spec);

// Payload bits of a tree-edge EFT label under this scheme.
std::size_t eft_tree_edge_bits(const SchemeSpec& spec);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

std::string csv_header();
std::string csv_row(const std::string& family, const SizeStats& s);

}  // namespace ftl
