#include <benchmark/benchmark.h>

#include "anls/errors.hpp"
#include "anls/ground_state.hpp"
#include "anls/random_fields.hpp"

using namespace anls;

// Fixed iteration count so the timing is per Petviashvili sweep.
static void BM_PetviashviliIterations(benchmark::State& state) {
  const Grid2D g = Grid2D::square(static_cast<std::size_t>(state.range(0)), 20.0);
  SolverOptions o;
  o.max_iter = 50;
  o.step_tol = 0.0;
  const Field seed = gaussian(g);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(petviashvili_solve({4.0, 1.0}, g, seed, o));
    } catch (const Error&) {
    }
  }
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_PetviashviliIterations)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_PetviashviliSolve(benchmark::State& state) {
  const Grid2D g = Grid2D::square(128, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(petviashvili_solve({3.0, 1.0}, g, gaussian(g)));
}
BENCHMARK(BM_PetviashviliSolve)->Unit(benchmark::kMillisecond);
