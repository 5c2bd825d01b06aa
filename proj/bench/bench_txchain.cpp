// Parallel sweep and grid kernels against their serial references.

#include <benchmark/benchmark.h>

#include "txpower/exampledata.hpp"

using namespace txpower;

namespace {

const ChainModels& models() {
    static const ChainModels m = fit_bundle(load_bundle(TXPOWER_EXAMPLES_DIR)).models();
    return m;
}

ChainConfig base() { return high_power_scenario(FrequencyGhz(60.0), PowerDbm(-10.0)); }

void BM_Sweep(benchmark::State& state) {
    const auto grid = uniform_grid(FrequencyGhz(1.0), FrequencyGhz(300.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(models(), base(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
    const auto grid = uniform_grid(FrequencyGhz(1.0), FrequencyGhz(300.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(models(), base(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateGrid(benchmark::State& state) {
    const auto grid = uniform_grid(FrequencyGhz(1.0), FrequencyGhz(300.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(models(), base(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateGridSerial(benchmark::State& state) {
    const auto grid = uniform_grid(FrequencyGhz(1.0), FrequencyGhz(300.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid_serial(models(), base(), grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Sweep)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_SweepSerial)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_EvaluateGrid)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_EvaluateGridSerial)->RangeMultiplier(8)->Range(64, 1 << 18);

BENCHMARK_MAIN();
