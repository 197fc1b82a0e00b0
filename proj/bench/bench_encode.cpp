// Encode throughput, serial reference against the OpenMP loops.
#include <benchmark/benchmark.h>

#include "ftl/archive.hpp"
#include "ftl/generators.hpp"

namespace {

using namespace ftl;

void run(benchmark::State& state, BuildSpec spec) {
  const auto n = static_cast<Vertex>(state.range(0));
  spec.encode.parallel = state.range(1) != 0;
  Graph g = gen::sparse_random(n, 42);
  for (auto _ : state) {
    auto labels = build_labels(g, spec);
    benchmark::DoNotOptimize(labels);
  }
  state.SetLabel(spec.encode.parallel ? "parallel" : "serial");
  state.counters["n"] = static_cast<double>(n);
}

void args(benchmark::internal::Benchmark* b, std::initializer_list<std::int64_t> sizes) {
  for (auto n : sizes)
    for (int par : {0, 1}) b->Args({n, par});
  b->Unit(benchmark::kMillisecond);
}

void BM_vft1(benchmark::State& s) { run(s, {.scheme = Scheme::vft1}); }
void BM_ss2vft(benchmark::State& s) { run(s, {.scheme = Scheme::ss2vft}); }
void BM_vft2(benchmark::State& s) { run(s, {.scheme = Scheme::vft2}); }
void BM_eft(benchmark::State& s) { run(s, {.scheme = Scheme::eft, .seed = 1, .certificate = false}); }
void BM_fvft3(benchmark::State& s) { run(s, {.scheme = Scheme::fvft, .f = 3, .seed = 1}); }

BENCHMARK(BM_vft1)->Apply([](auto* b) { args(b, {1024, 4096}); });
BENCHMARK(BM_ss2vft)->Apply([](auto* b) { args(b, {1024, 4096}); });
BENCHMARK(BM_vft2)->Apply([](auto* b) { args(b, {256, 1024}); });
BENCHMARK(BM_eft)->Apply([](auto* b) { args(b, {256, 1024}); });
BENCHMARK(BM_fvft3)->Apply([](auto* b) { args(b, {256, 512}); });

}  // namespace

BENCHMARK_MAIN();
