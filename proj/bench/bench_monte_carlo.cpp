#include <benchmark/benchmark.h>

#include <omp.h>

#include "esr/channel.hpp"
#include "esr/monte_carlo.hpp"

using namespace esr;

namespace {

constexpr std::size_t kTrials = 4096;

void BM_serial(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Scenario s = reference_scenario(5, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_monte_carlo_serial(s, n, kTrials, 1));
  state.SetItemsProcessed(state.iterations() * kTrials);
}

void BM_openmp(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const Scenario s = reference_scenario(5, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_monte_carlo(s, n, kTrials, 1));
  state.SetItemsProcessed(state.iterations() * kTrials);
  state.counters["threads"] = omp_get_max_threads();
}

} // namespace

BENCHMARK(BM_serial)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_openmp)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
