#include <doctest.h>
#include <omp.h>

#include "ftl/archive.hpp"
#include "ftl/generators.hpp"
#include "ftl/vftf.hpp"

using namespace ftl;

namespace {

std::vector<std::uint8_t> encode_bytes(const Graph& g, BuildSpec spec, bool parallel) {
  spec.encode.parallel = parallel;
  return to_bytes(make_archive(g, spec));
}

}  // namespace

// Forces several threads even on a single core so the parallel loops really interleave.
TEST_CASE("parallel encodings are byte-identical to the serial reference") {
  omp_set_num_threads(4);
  std::vector<Graph> graphs = {gen::gnp(90, 0.08, 1), gen::grid(7, 9), gen::wheel(40), gen::cycle(33)};
  std::vector<BuildSpec> specs = {
      {.scheme = Scheme::vft1},
      {.scheme = Scheme::vft1, .certificate = false},
      {.scheme = Scheme::ss2vft, .source = 3},
      {.scheme = Scheme::vft2},
      {.scheme = Scheme::vft2, .certificate = false},
      {.scheme = Scheme::eft, .seed = 11, .certificate = false},
      {.scheme = Scheme::fvft, .f = 3, .seed = 12},
      {.scheme = Scheme::fvft, .f = 3, .seed = 13, .threshold = 6},
      {.scheme = Scheme::fvft, .f = 4, .seed = 14, .threshold = 8},
  };
  for (const auto& g : graphs)
    for (const auto& spec : specs) {
      CAPTURE(scheme_name(spec.scheme));
      CAPTURE(g.n());
      auto serial = encode_bytes(g, spec, false);
      CHECK(encode_bytes(g, spec, true) == serial);
    }
}

TEST_CASE("streamed fvft sizes do not depend on the thread count") {
  Graph g = gen::gnp(120, 0.1, 5);
  FvftOptions opt{.f = 3, .seed = 2, .threshold = 12};
  opt.encode.parallel = false;
  auto serial = fvft_label_sizes(g, opt);
  omp_set_num_threads(4);
  opt.encode.parallel = true;
  auto parallel = fvft_label_sizes(g, opt);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].total == parallel[i].total);
    CHECK(serial[i].level_payload == parallel[i].level_payload);
  }
}
