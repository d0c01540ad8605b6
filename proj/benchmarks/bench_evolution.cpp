#include <benchmark/benchmark.h>

#include "anls/evolution.hpp"
#include "anls/random_fields.hpp"

using namespace anls;

static void BM_StrangStep(benchmark::State& state) {
  const Grid2D g = Grid2D::square(static_cast<std::size_t>(state.range(0)), 20.0);
  SplitStepper stepper(g, {3.0, 1.0}, {1.0, state.range(1) != 0});
  Field psi = gaussian(g);
  for (auto _ : state) {
    stepper.strang(psi, 1e-3);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_StrangStep)->Args({128, 0})->Args({256, 0})->Args({256, 1})->Args({512, 0})
    ->Unit(benchmark::kMicrosecond);

static void BM_Diagnose(benchmark::State& state) {
  const Field psi = gaussian(Grid2D::square(256, 20.0));
  for (auto _ : state) benchmark::DoNotOptimize(diagnose(psi, 0.0, {3.0, 1.0}));
}
BENCHMARK(BM_Diagnose)->Unit(benchmark::kMicrosecond);
