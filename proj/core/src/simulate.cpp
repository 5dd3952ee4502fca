#include "subplan/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "subplan/acceptance.hpp"
#include "subplan/normal.hpp"

namespace subplan {

namespace {

double maybe_integerize(double q, bool integerize) {
    return integerize ? std::round(q) : q;
}

// (u >> 11) < ceil(p * 2^53) decides exactly like next_double() < p; the
// integer compare keeps the per-customer loop off the float unit.
std::uint64_t bernoulli_threshold(double p) {
    return static_cast<std::uint64_t>(std::ceil(p * 9007199254740992.0));
}

bool bernoulli(Xoshiro256PlusPlus& rng, std::uint64_t threshold) {
    return (rng.next_u64() >> 11) < threshold;
}

double stochastic_order_quantity(int group_size, double pi, double z_alpha) {
    if (group_size <= 0) {
        return 0.0;
    }
    const double mu = group_size * pi;
    const double var = pi >= 1.0 ? 0.0 : mu * (1.0 - pi);
    return mu + std::sqrt(var) * z_alpha;
}

struct RunResult {
    double initial_profit = 0.0;
    double eval_profit_sum = 0.0;
    int subscribers = 0;
    int service_hits = 0; // over 1 + periods cells
};

class Engine {
  public:
    Engine(const SimulationConfig& config, const MarketParams& params, double tau, double eta)
        : cfg_(config), m_(params), tau_(tau),
          buy_threshold_(bernoulli_threshold(params.pi)),
          accept_threshold_(bernoulli_threshold(eta)),
          z_alpha_(std_normal_quantile(params.alpha)) {
        q_initial_ = maybe_integerize(
            stochastic_order_quantity(m_.n, m_.pi, z_alpha_), cfg_.integerize_q);
    }

    RunResult simulate_run(std::uint64_t run_index, std::vector<std::uint64_t>& buyer_bits,
                           std::vector<std::uint64_t>& subscriber_bits) const {
        Xoshiro256PlusPlus rng(derive_run_seed(cfg_.master_seed, run_index));
        const int n = m_.n;
        RunResult result;

        // Initial booking period: no commitments yet.
        int initial_buyers = 0;
        for (int i = 0; i < n; ++i) {
            const bool buys = bernoulli(rng, buy_threshold_);
            set_bit(buyer_bits, i, buys);
            initial_buyers += buys;
        }
        result.initial_profit =
            m_.p * std::min<double>(initial_buyers, q_initial_) - m_.c * q_initial_;
        result.service_hits += initial_buyers <= q_initial_;

        // One-shot subscription decision by each initial buyer.
        int subscribers = 0;
        for (int i = 0; i < n; ++i) {
            const bool accepts = bernoulli(rng, accept_threshold_);
            const bool subscribes = accepts && get_bit(buyer_bits, i);
            set_bit(subscriber_bits, i, subscribes);
            subscribers += subscribes;
        }
        result.subscribers = subscribers;

        const int group = n - subscribers;
        const double q_stoch =
            maybe_integerize(stochastic_order_quantity(group, m_.pi, z_alpha_),
                             cfg_.integerize_q);
        const double subscription_revenue = (m_.p - tau_) * subscribers;
        const double order_cost = m_.c * (subscribers + q_stoch);
        const int words = (n + 63) / 64;

        for (int t = 0; t < cfg_.periods; ++t) {
            double demand;
            if (cfg_.demand_model == DemandModel::binomial) {
                int hits = 0;
                for (int w = 0; w < words; ++w) {
                    std::uint64_t open = ~subscriber_bits[w];
                    const int limit = std::min(64, n - w * 64);
                    for (int j = 0; j < limit; ++j) {
                        hits += static_cast<int>(
                            static_cast<std::uint64_t>(rng.next_u64() >> 11 < buy_threshold_) &
                            (open & 1ULL));
                        open >>= 1;
                    }
                }
                demand = hits;
            } else {
                demand = normal_demand(rng, group);
            }
            const double z = subscription_revenue + m_.p * std::min(demand, q_stoch) -
                             order_cost;
            result.eval_profit_sum += z;
            result.service_hits += demand <= q_stoch;
        }
        return result;
    }

  private:
    double normal_demand(Xoshiro256PlusPlus& rng, int group) const {
        const double mu = group * m_.pi;
        const double sigma = std::sqrt(std::max(0.0, mu * (1.0 - m_.pi)));
        // Keep the uniform strictly inside (0, 1); the clamp bias is
        // irrelevant for this validation-only mode.
        const double u = std::clamp(rng.next_double(), 0x1.0p-53, 1.0 - 0x1.0p-53);
        return std::max(0.0, mu + sigma * std_normal_quantile(u));
    }

    static void set_bit(std::vector<std::uint64_t>& bits, int i, bool value) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (value) {
            bits[i >> 6] |= mask;
        } else {
            bits[i >> 6] &= ~mask;
        }
    }

    static bool get_bit(const std::vector<std::uint64_t>& bits, int i) {
        return (bits[i >> 6] >> (i & 63)) & 1ULL;
    }

    const SimulationConfig& cfg_;
    const MarketParams& m_;
    double tau_;
    std::uint64_t buy_threshold_;
    std::uint64_t accept_threshold_;
    double z_alpha_;
    double q_initial_ = 0.0;
};

} // namespace

void SimulationConfig::validate() const {
    if (runs < 1) {
        throw std::domain_error("SimulationConfig: runs must be >= 1");
    }
    if (periods < 1) {
        throw std::domain_error("SimulationConfig: periods must be >= 1");
    }
    if (threads < 0) {
        throw std::domain_error("SimulationConfig: threads must be >= 0");
    }
}

SimulationReport run_simulation(const SimulationConfig& config, const MarketParams& params,
                                double tau, double lambda) {
    config.validate();
    params.validate();
    if (!(tau >= 0.0 && tau < params.p)) {
        throw std::domain_error("run_simulation: need 0 <= tau < p");
    }
    const double eta = acceptance_probability(tau / params.p, params.pi, lambda);
    const Engine engine(config, params, tau, eta);

    const int runs = config.runs;
    std::vector<RunResult> results(runs);

    unsigned hw = std::thread::hardware_concurrency();
    int workers = config.threads > 0 ? config.threads : static_cast<int>(hw ? hw : 1);
    workers = std::clamp(workers, 1, runs);

    const int words = (params.n + 63) / 64;
    auto worker = [&](int first, int last) {
        std::vector<std::uint64_t> buyer_bits(words), subscriber_bits(words);
        for (int r = first; r < last; ++r) {
            results[r] = engine.simulate_run(static_cast<std::uint64_t>(r), buyer_bits,
                                             subscriber_bits);
        }
    };

    if (workers == 1) {
        worker(0, runs);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const int chunk = (runs + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int first = w * chunk;
            const int last = std::min(runs, first + chunk);
            if (first < last) {
                pool.emplace_back(worker, first, last);
            }
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // Reduce in run order so thread count cannot change the report.
    SimulationReport report;
    report.run_traces.reserve(runs);
    double initial_sum = 0.0;
    double eval_sum = 0.0;
    double share_sum = 0.0;
    long long service_hits = 0;
    int min_subs = results[0].subscribers;
    int max_subs = results[0].subscribers;
    long long subs_sum = 0;
    for (const RunResult& r : results) {
        initial_sum += r.initial_profit;
        eval_sum += r.eval_profit_sum;
        share_sum += static_cast<double>(r.subscribers) / params.n;
        service_hits += r.service_hits;
        min_subs = std::min(min_subs, r.subscribers);
        max_subs = std::max(max_subs, r.subscribers);
        subs_sum += r.subscribers;
        report.run_traces.push_back(
            {r.subscribers, r.eval_profit_sum / config.periods});
    }
    const double s = runs;
    report.initial_period_mean_profit = initial_sum / s;
    report.eval_mean_profit_per_period = eval_sum / (s * config.periods);
    report.mean_subscriber_share = share_sum / s;
    report.realized_service_level =
        static_cast<double>(service_hits) / (s * (1.0 + config.periods));
    report.subscribers = {min_subs, max_subs, static_cast<double>(subs_sum) / s};

    if (runs > 1) {
        const double mean = report.eval_mean_profit_per_period;
        double ss = 0.0;
        for (const RunTrace& t : report.run_traces) {
            const double d = t.mean_profit - mean;
            ss += d * d;
        }
        report.std_error = std::sqrt(ss / (s - 1.0)) / std::sqrt(s);
    }
    return report;
}

void write_run_trace_csv(const SimulationReport& report, std::ostream& out) {
    out << "run,n_sub,mean_period_profit\n";
    char buf[64];
    for (std::size_t r = 0; r < report.run_traces.size(); ++r) {
        const RunTrace& t = report.run_traces[r];
        std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g\n", r, t.subscribers, t.mean_profit);
        out << buf;
    }
}

} // namespace subplan
