#include <benchmark/benchmark.h>

#include "subplan/simulate.hpp"

namespace {
const subplan::MarketParams kBasic{500, 0.5, 1.0, 0.85, 0.97};
}

static void SimulationRuns(benchmark::State& state) {
    subplan::SimulationConfig config;
    config.runs = static_cast<int>(state.range(0));
    config.periods = 48;
    config.threads = 1;
    for (auto _ : state) {
        const subplan::SimulationReport report =
            subplan::run_simulation(config, kBasic, 0.023, 0.5);
        benchmark::DoNotOptimize(report.eval_mean_profit_per_period);
    }
    state.SetItemsProcessed(state.iterations() * config.runs);
}
BENCHMARK(SimulationRuns)->Arg(100)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
