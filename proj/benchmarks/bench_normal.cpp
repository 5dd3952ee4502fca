#include <benchmark/benchmark.h>

#include "subplan/normal.hpp"

static void QuantileAcklamNewton(benchmark::State& state) {
    double q = 0.0001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(subplan::std_normal_quantile(q));
        q += 0.0001;
        if (q >= 1.0) {
            q = 0.0001;
        }
    }
}
BENCHMARK(QuantileAcklamNewton);

static void CdfErfc(benchmark::State& state) {
    double z = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(subplan::std_normal_cdf(z));
        z += 0.001;
        if (z > 8.0) {
            z = -8.0;
        }
    }
}
BENCHMARK(CdfErfc);

BENCHMARK_MAIN();
