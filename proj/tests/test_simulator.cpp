#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "subplan/acceptance.hpp"
#include "subplan/demand.hpp"
#include "subplan/profit.hpp"
#include "subplan/simulate.hpp"
#include "test_support.hpp"

using namespace subplan;
using test::near;

namespace {

const MarketParams kBasic{500, 0.5, 1.0, 0.85, 0.97};

SimulationConfig quick(int runs, int periods, std::uint64_t seed = 10) {
    SimulationConfig config;
    config.runs = runs;
    config.periods = periods;
    config.master_seed = seed;
    return config;
}

bool identical(const SimulationReport& a, const SimulationReport& b) {
    if (a.initial_period_mean_profit != b.initial_period_mean_profit ||
        a.eval_mean_profit_per_period != b.eval_mean_profit_per_period ||
        a.std_error != b.std_error || a.mean_subscriber_share != b.mean_subscriber_share ||
        a.realized_service_level != b.realized_service_level ||
        a.run_traces.size() != b.run_traces.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.run_traces.size(); ++i) {
        if (a.run_traces[i].subscribers != b.run_traces[i].subscribers ||
            a.run_traces[i].mean_profit != b.run_traces[i].mean_profit) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("run seeds are distinct and reproducible") {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(1000000);
    for (std::uint64_t i = 0; i < 1000000; ++i) {
        seeds.push_back(derive_run_seed(10, i));
    }
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
    CHECK(derive_run_seed(123, 456) == derive_run_seed(123, 456));
    CHECK(derive_run_seed(123, 456) != derive_run_seed(124, 456));
}

TEST_CASE("identical master seed gives a bit-identical report") {
    const SimulationConfig config = quick(50, 12);
    const SimulationReport a = run_simulation(config, kBasic, 0.023, 0.5);
    const SimulationReport b = run_simulation(config, kBasic, 0.023, 0.5);
    CHECK(identical(a, b));
}

TEST_CASE("thread count does not change the report") {
    SimulationConfig serial = quick(100, 12);
    serial.threads = 1;
    SimulationConfig parallel = serial;
    parallel.threads = 2;
    CHECK(identical(run_simulation(serial, kBasic, 0.023, 0.5),
                    run_simulation(parallel, kBasic, 0.023, 0.5)));
}

TEST_CASE("zero discount means no subscribers") {
    const SimulationReport report = run_simulation(quick(2000, 8), kBasic, 0.0, 0.9);
    CHECK(report.subscribers.max == 0);
    CHECK(report.mean_subscriber_share == 0.0);
    CHECK(near(report.eval_mean_profit_per_period, report.initial_period_mean_profit, 0.5));
}

TEST_CASE("certain demand is exactly deterministic") {
    MarketParams certain = kBasic;
    certain.pi = 1.0;
    const SimulationReport report = run_simulation(quick(20, 6), certain, 0.0, 0.5);
    CHECK(report.initial_period_mean_profit == doctest::Approx(0.15 * 500).epsilon(1e-15));
    CHECK(report.eval_mean_profit_per_period == doctest::Approx(0.15 * 500).epsilon(1e-15));
    CHECK(report.std_error == 0.0);
    CHECK(report.realized_service_level == 1.0);
}

TEST_CASE("per-period profit is capped by the sold-out case") {
    // alpha = 0.5 makes demand exceed the order roughly half the time, so the
    // cap is attained; with one evaluation period the trace mean is the
    // period profit itself.
    MarketParams m = kBasic;
    m.alpha = 0.5;
    SimulationConfig config = quick(300, 1);
    const double tau = 0.023;
    const SimulationReport report = run_simulation(config, m, tau, 0.5);
    const double z_alpha = 0.0; // quantile(0.5)
    bool cap_attained = false;
    for (const RunTrace& trace : report.run_traces) {
        const int group = m.n - trace.subscribers;
        const double q_stoch = std::round(group * m.pi + z_alpha);
        const double cap = (m.p - tau) * trace.subscribers + m.p * q_stoch -
                           m.c * (trace.subscribers + q_stoch);
        CHECK(trace.mean_profit <= cap + 1e-9);
        if (std::fabs(trace.mean_profit - cap) <= 1e-9) {
            cap_attained = true;
        }
    }
    CHECK(cap_attained);
}

TEST_CASE("realized service level tracks the target") {
    SUBCASE("high target") {
        const SimulationReport report = run_simulation(quick(2000, 12), kBasic, 0.023, 0.5);
        CHECK(near(report.realized_service_level, 0.97, 0.01));
    }
    SUBCASE("median target without integerization") {
        MarketParams m = kBasic;
        m.alpha = 0.5;
        SimulationConfig config = quick(2000, 12);
        config.integerize_q = false;
        const SimulationReport report = run_simulation(config, m, 0.023, 0.5);
        CHECK(near(report.realized_service_level, 0.5, 0.02));
    }
}

TEST_CASE("evaluation mean converges to the closed form") {
    const double tau = 0.023;
    const double beta = ex_ante_share(tau, kBasic.pi, 0.5);
    const double analytic = subscription_profit(kBasic, tau, AdiShare(beta)).expected_profit;

    SUBCASE("binomial demand with integer orders") {
        const SimulationReport report = run_simulation(quick(10000, 48), kBasic, tau, 0.5);
        CHECK(std::fabs(report.eval_mean_profit_per_period - analytic) <=
              3.0 * report.std_error + 0.05);
    }
    SUBCASE("normal demand without integerization isolates the approximation") {
        SimulationConfig config = quick(10000, 48);
        config.integerize_q = false;
        config.demand_model = DemandModel::normal_approx;
        const SimulationReport report = run_simulation(config, kBasic, tau, 0.5);
        CHECK(std::fabs(report.eval_mean_profit_per_period - analytic) <=
              3.0 * report.std_error);
    }
}

TEST_CASE("subscriber share estimates the ex-ante share") {
    const double beta = ex_ante_share(0.023, kBasic.pi, 0.5);
    const SimulationReport report = run_simulation(quick(10000, 1), kBasic, 0.023, 0.5);
    const double bound =
        3.0 * std::sqrt(beta * (1.0 - beta) / (kBasic.n * 10000.0)) * std::sqrt(kBasic.n);
    CHECK(std::fabs(report.mean_subscriber_share - beta) <= bound);
}

TEST_CASE("run trace CSV") {
    const SimulationReport report = run_simulation(quick(3, 4), kBasic, 0.023, 0.5);
    std::ostringstream out;
    write_run_trace_csv(report, out);
    const std::string text = out.str();
    CHECK(text.rfind("run,n_sub,mean_period_profit\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("config validation") {
    SimulationConfig bad;
    bad.runs = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = {};
    bad.periods = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CHECK_THROWS_AS(run_simulation(quick(10, 4), kBasic, 1.0, 0.5), std::domain_error);
}
