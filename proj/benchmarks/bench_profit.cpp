#include <benchmark/benchmark.h>

#include "subplan/acceptance.hpp"
#include "subplan/demand.hpp"
#include "subplan/profit.hpp"

namespace {
const subplan::MarketParams kBasic{500, 0.5, 1.0, 0.85, 0.97};
}

static void BaselineClosedForm(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(subplan::baseline_profit(kBasic).expected_profit);
    }
}
BENCHMARK(BaselineClosedForm);

static void QuadratureOracle(benchmark::State& state) {
    const double q = subplan::order_quantity(kBasic);
    for (auto _ : state) {
        benchmark::DoNotOptimize(subplan::expected_profit_integral(kBasic, q));
    }
}
BENCHMARK(QuadratureOracle);

static void AnalyticDiscountSearch(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(subplan::optimize_discount_analytic(kBasic, 0.5).tau_star);
    }
}
BENCHMARK(AnalyticDiscountSearch);

BENCHMARK_MAIN();
