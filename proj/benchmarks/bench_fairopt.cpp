#include <benchmark/benchmark.h>

#include "fairalloc/fairopt.hpp"
#include "fairalloc/instances.hpp"

namespace {

// The optimal-fair oracle dominates experiment runtime, so track it at the
// sizes the sweeps actually use. m = 2 stays cheap via the exact envy chain;
// m = 3 exercises the lazy row generation.
void BM_fair_benchmark_m2(benchmark::State& state) {
  const auto inst = fairalloc::gen_alpha(static_cast<int>(state.range(0)), 0.3, 777);
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::fair_benchmark(inst));
}
BENCHMARK(BM_fair_benchmark_m2)->Arg(10)->Arg(100)->Arg(500);

void BM_fair_benchmark_m3(benchmark::State& state) {
  const auto inst =
      fairalloc::gen_alpha_beta(static_cast<int>(state.range(0)), 3, 0.4, 0.5, 777);
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::fair_benchmark(inst));
}
BENCHMARK(BM_fair_benchmark_m3)->Arg(10)->Arg(50)->Arg(100);

void BM_max_fair_sw_m3(benchmark::State& state) {
  const auto inst =
      fairalloc::gen_alpha_beta(static_cast<int>(state.range(0)), 3, 0.4, 0.5, 777);
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::max_fair_sw(inst));
}
BENCHMARK(BM_max_fair_sw_m3)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
