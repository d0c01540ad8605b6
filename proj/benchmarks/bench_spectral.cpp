#include <benchmark/benchmark.h>

#include "anls/functionals.hpp"
#include "anls/kernel_decay.hpp"
#include "anls/random_fields.hpp"
#include "anls/spectral.hpp"

using namespace anls;

static void BM_ForwardInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Field f = gaussian(Grid2D::square(n, 20.0));
  for (auto _ : state) {
    auto s = spectral::forward(f);
    benchmark::DoNotOptimize(spectral::inverse(f.grid(), std::move(s)));
  }
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

static void BM_Dyyyy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Field f = gaussian(Grid2D::square(n, 20.0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::dyyyy(f));
}
BENCHMARK(BM_Dyyyy)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_LinearPropagate(benchmark::State& state) {
  const Field f = gaussian(Grid2D::square(static_cast<std::size_t>(state.range(0)), 20.0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::linear_propagate(f, 1e-3));
}
BENCHMARK(BM_LinearPropagate)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_Functionals(benchmark::State& state) {
  const Field f = gaussian(Grid2D::square(static_cast<std::size_t>(state.range(0)), 20.0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_functionals(f, {4.0, 1.0}));
}
BENCHMARK(BM_Functionals)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_KernelEval(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_eval(x, 1.0));
    x = x > 4.0 ? 0.5 : x + 0.25;
  }
}
BENCHMARK(BM_KernelEval)->Unit(benchmark::kMicrosecond);
