#pragma once

#include <cstdint>
#include <string>

#include "ftl/graph.hpp"

namespace ftl::gen {

Graph path(Vertex n);
Graph cycle(Vertex n);
Graph star(Vertex leaves);                 // center 0
Graph wheel(Vertex n);                     // hub 0, rim 1..n-1
Graph complete(Vertex n);
Graph grid(Vertex rows, Vertex cols);
// `branches` internally disjoint paths with `inner` interior vertices each between 0 and 1.
Graph theta(Vertex branches, Vertex inner);
Graph gnp(Vertex n, double p, std::uint64_t seed);
// G(n, 2 ln n / n), the family used for size measurements.
Graph sparse_random(Vertex n, std::uint64_t seed);
// Families addressable by name from the command line: gnp, cycle, grid, wheel.
Graph family(const std::string& name, Vertex n, std::uint64_t seed);

}  // namespace ftl::gen
