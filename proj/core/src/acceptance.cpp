#include "subplan/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "subplan/profit.hpp"
#include "subplan/simulate.hpp"

namespace subplan {

namespace {

constexpr double kDisplayGrid = 0.001; // the 0.1% reporting granularity

double round_to_display(double tau) {
    return std::round(tau / kDisplayGrid) * kDisplayGrid;
}

void check_unit_interval(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error(std::string("acceptance_probability: ") + name +
                                " must lie in [0, 1]");
    }
}

// Golden-section maximization on [lo, hi] for a unimodal objective.
template <typename F>
double golden_section_max(F f, double lo, double hi, double xtol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

DiscountSolution finish_solution(const MarketParams& params, double lambda, double tau_star,
                                 double objective_at_star, double baseline) {
    DiscountSolution out;
    out.tau_star = tau_star;
    out.tau_star_display = round_to_display(tau_star);
    out.expected_profit = objective_at_star;
    out.beta_at_optimum = ex_ante_share(tau_star / params.p, params.pi, lambda);
    if (baseline > 0.0) {
        out.relative_uplift = (objective_at_star - baseline) / baseline;
    }
    out.degenerate = tau_star == 0.0;
    return out;
}

} // namespace

double acceptance_probability(double tau, double pi, double lambda) {
    check_unit_interval(tau, "tau");
    check_unit_interval(pi, "pi");
    check_unit_interval(lambda, "lambda");
    return std::cbrt(tau * pi * lambda);
}

double ex_ante_share(double tau, double pi, double lambda) {
    return pi * acceptance_probability(tau, pi, lambda);
}

IsoquantResult isoquant_lambda(double eta_target, double tau, double pi) {
    if (!(eta_target > 0.0 && eta_target <= 1.0)) {
        throw std::domain_error("isoquant_lambda: eta_target must lie in (0, 1]");
    }
    if (!(tau * pi > 0.0)) {
        throw std::domain_error("isoquant_lambda: tau * pi must be positive");
    }
    const double lambda = eta_target * eta_target * eta_target / (tau * pi);
    if (lambda > 1.0) {
        return {1.0, true};
    }
    return {lambda, false};
}

SubscriptionTerms subscription_terms(const MarketParams& params, double tau, double lambda) {
    params.validate();
    SubscriptionTerms terms;
    terms.tau = tau;
    terms.lambda = lambda;
    terms.eta = acceptance_probability(tau / params.p, params.pi, lambda);
    terms.beta = params.pi * terms.eta;
    return terms;
}

DiscountSolution optimize_discount_analytic(const MarketParams& params, double lambda,
                                            const OptimizeOptions& options) {
    params.validate();
    check_unit_interval(lambda, "lambda");
    if (!(options.grid_step > 0.0)) {
        throw std::domain_error("optimize_discount_analytic: grid_step must be positive");
    }
    const double baseline = baseline_profit(params).expected_profit;
    const auto objective = [&](double tau) {
        const AdiShare beta(ex_ante_share(tau / params.p, params.pi, lambda));
        return subscription_profit(params, tau, beta).expected_profit;
    };

    const double hi = params.p - params.c;
    const int cells = static_cast<int>(std::floor(hi / options.grid_step + 1e-12));
    double best_tau = 0.0;
    double best_value = objective(0.0);
    for (int i = 1; i <= cells; ++i) {
        const double tau = i * options.grid_step;
        const double value = objective(tau);
        if (value > best_value) { // strict: ties keep the smaller discount
            best_value = value;
            best_tau = tau;
        }
    }

    if (options.refine && best_tau > 0.0) {
        const double lo = std::max(0.0, best_tau - options.grid_step);
        const double up = std::min(hi, best_tau + options.grid_step);
        const double refined = golden_section_max(objective, lo, up, 1e-5);
        const double refined_value = objective(refined);
        if (refined_value > best_value) {
            best_tau = refined;
            best_value = refined_value;
        }
    }
    return finish_solution(params, lambda, best_tau, best_value, baseline);
}

DiscountSolution optimize_discount_simulated(const SimulationConfig& config,
                                             const MarketParams& params, double lambda,
                                             double grid_step) {
    config.validate();
    params.validate();
    check_unit_interval(lambda, "lambda");
    if (!(grid_step > 0.0)) {
        throw std::domain_error("optimize_discount_simulated: grid_step must be positive");
    }

    const double hi = params.p - params.c;
    const int cells = static_cast<int>(std::floor(hi / grid_step + 1e-12));
    double best_tau = 0.0;
    double best_value = 0.0;
    double baseline = 0.0;
    SimulationReport best_report;
    for (int i = 0; i <= cells; ++i) {
        const double tau = i * grid_step;
        // Same master seed at every grid point: common random numbers keep
        // the argmax stable on the flat objective.
        SimulationReport report = run_simulation(config, params, tau, lambda);
        if (i == 0) {
            baseline = report.initial_period_mean_profit;
        }
        if (i == 0 || report.eval_mean_profit_per_period > best_value) {
            best_value = report.eval_mean_profit_per_period;
            best_tau = tau;
            best_report = std::move(report);
        }
    }

    DiscountSolution out;
    out.tau_star = best_tau;
    out.tau_star_display = round_to_display(best_tau);
    out.expected_profit = best_value;
    out.beta_at_optimum = best_report.mean_subscriber_share;
    if (baseline > 0.0) {
        out.relative_uplift = (best_value - baseline) / baseline;
    }
    out.degenerate = best_tau == 0.0;
    out.std_error = best_report.std_error;
    return out;
}

} // namespace subplan
