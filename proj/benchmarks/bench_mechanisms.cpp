#include <benchmark/benchmark.h>

#include "fairalloc/instances.hpp"
#include "fairalloc/mechanisms.hpp"

namespace {

fairalloc::Instance make_m2(int n) { return fairalloc::gen_alpha(n, 0.3, 12345); }

fairalloc::Instance make_m3(int n) { return fairalloc::gen_alpha_beta(n, 3, 0.4, 0.5, 12345); }

void BM_drf(benchmark::State& state) {
  const auto inst = make_m2(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::drf(inst));
}
BENCHMARK(BM_drf)->Arg(10)->Arg(100)->Arg(1000);

void BM_f1(benchmark::State& state) {
  const auto inst = make_m2(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::f1(inst));
}
BENCHMARK(BM_f1)->Arg(10)->Arg(100)->Arg(1000);

void BM_f2(benchmark::State& state) {
  const auto inst = make_m2(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::f2(inst));
}
BENCHMARK(BM_f2)->Arg(10)->Arg(100)->Arg(1000);

void BM_f2star(benchmark::State& state) {
  const auto inst = make_m2(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::f2star(inst));
}
BENCHMARK(BM_f2star)->Arg(10)->Arg(100)->Arg(1000);

void BM_generalized_f1_m3(benchmark::State& state) {
  const auto inst = make_m3(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::generalized_f1(inst));
}
BENCHMARK(BM_generalized_f1_m3)->Arg(10)->Arg(100)->Arg(1000);

void BM_fg_sum_product(benchmark::State& state) {
  const auto inst = make_m2(static_cast<int>(state.range(0)));
  const auto g = fairalloc::score_sum_product();
  for (auto _ : state) benchmark::DoNotOptimize(fairalloc::f_g(inst, g));
}
BENCHMARK(BM_fg_sum_product)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
