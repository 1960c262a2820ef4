#include <benchmark/benchmark.h>

#include "revxdt/io.hpp"
#include "revxdt/oneway.hpp"
#include "revxdt/tree_outline.hpp"
#include "revxdt/uniformize.hpp"

using namespace revxdt;

namespace {

Transducer fixture(const std::string& name) {
  return load_transducer(std::string(REVXDT_FIXTURES_DIR) + "/" + name + ".json");
}

// straight chain of n states accepting a^(n-3)
Transducer ladder(int n) {
  Builder b("ladder");
  for (int i = 0; i < n; ++i) b.state("s" + std::to_string(i));
  b.initial(0);
  b.final(n - 1);
  b.input_letter("a");
  b.output_letter("a");
  b.transition(0, kBegin, 1);
  for (int i = 1; i + 2 < n; ++i) b.transition(i, "a", i + 1, {"a"});
  b.transition(n - 2, kEnd, n - 1);
  return b.build();
}

void BM_compose_mirror(benchmark::State& st) {
  auto m = fixture("mirror");
  for (auto _ : st) benchmark::DoNotOptimize(compose_reversible(m, m));
}
BENCHMARK(BM_compose_mirror);

void BM_tree_outline(benchmark::State& st) {
  auto t = ladder(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(tree_outline(t));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_tree_outline)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oNSquared);

void BM_codet_pipeline(benchmark::State& st) {
  auto t = fixture("t1");
  PipelineOptions opt;
  opt.reachable_only = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(codet1ft_to_reversible(t, opt));
}
BENCHMARK(BM_codet_pipeline)->Arg(0)->Arg(1);

void BM_det_pipeline(benchmark::State& st) {
  auto t = fixture("a1");
  PipelineOptions opt;
  opt.reachable_only = true;
  for (auto _ : st) benchmark::DoNotOptimize(det1ft_to_reversible(t, opt));
}
BENCHMARK(BM_det_pipeline);

void BM_uniformize_rel(benchmark::State& st) {
  auto t = fixture("rel");
  for (auto _ : st) benchmark::DoNotOptimize(uniformize(t));
}
BENCHMARK(BM_uniformize_rel);

}  // namespace

BENCHMARK_MAIN();
