#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "subplan/demand.hpp"
#include "subplan/rng.hpp"

namespace subplan {

/// Which distribution evaluation-period demand is drawn from. The normal
/// mode exists to reconcile simulation output with the closed forms in
/// tests; production runs use per-customer binomial draws.
enum class DemandModel { binomial, normal_approx };

struct SimulationConfig {
    int runs = 10000;
    int periods = 48;          ///< evaluation periods after the initial one
    std::uint64_t master_seed = 10;
    bool integerize_q = true;  ///< round order quantities to the nearest integer
    DemandModel demand_model = DemandModel::binomial;
    int threads = 0;           ///< 0 = hardware concurrency

    void validate() const;
};

struct RunTrace {
    int subscribers = 0;
    double mean_profit = 0.0; ///< mean over the evaluation periods of this run
};

struct SubscriberSummary {
    int min = 0;
    int max = 0;
    double mean = 0.0;
};

struct SimulationReport {
    double initial_period_mean_profit = 0.0;
    double eval_mean_profit_per_period = 0.0;
    double std_error = 0.0;             ///< sample std of per-run means / sqrt(runs)
    double mean_subscriber_share = 0.0; ///< mean of subscribers/n across runs
    double realized_service_level = 0.0; ///< share of all (run, period) cells with demand <= order
    SubscriberSummary subscribers;
    std::vector<RunTrace> run_traces;   ///< per run, in run-index order
};

/// One full study: an initial booking period without commitments, a one-shot
/// subscription decision by each initial buyer (acceptance probability
/// eta(tau/p, pi, lambda)), then `periods` evaluation periods in which
/// subscribers buy deterministically at p - tau and the rest buy with
/// probability pi.
///
/// Per evaluation period and run, with m subscribers and stochastic demand x:
///   order  q = m + Q(alpha-quantile of the remaining group's normal approx)
///   profit z = (p - tau) * m + p * (min(m + x, q) - m) - c * q
///
/// Determinism: run r uses an independent generator seeded with
/// derive_run_seed(master_seed, r). Uniform draws sit at fixed stream
/// positions (n initial-demand draws, n acceptance draws, n draws per
/// evaluation period) so results are bit-identical for a given master seed
/// regardless of thread count, and demand paths are common across discount
/// grid points. Acceptance draws of non-buyers and demand draws of
/// subscribers are discarded.
SimulationReport run_simulation(const SimulationConfig& config, const MarketParams& params,
                                double tau, double lambda);

/// Columns: run,n_sub,mean_period_profit (header row included).
void write_run_trace_csv(const SimulationReport& report, std::ostream& out);

} // namespace subplan
