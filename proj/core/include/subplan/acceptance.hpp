#pragma once

#include <optional>

#include "subplan/demand.hpp"

namespace subplan {

struct SimulationConfig;

/// Probability that an offered customer accepts the subscription:
/// eta = (tau * pi * lambda)^(1/3), Cobb-Douglas with equal weights.
/// All three inputs must lie in [0, 1]; tau is the discount relative to a
/// unit price (divide by p first for general prices).
double acceptance_probability(double tau, double pi, double lambda);

/// Ex-ante subscribing share beta = pi * eta (only initial buyers receive
/// the offer).
double ex_ante_share(double tau, double pi, double lambda);

/// Popularity lambda = eta^3 / (tau * pi) needed to hit a target acceptance
/// probability. `clamped` flags targets that would need lambda > 1.
struct IsoquantResult {
    double lambda = 0.0;
    bool clamped = false;
};

IsoquantResult isoquant_lambda(double eta_target, double tau, double pi);

/// Offer terms for one scenario; tau is stored as given, eta/beta are
/// computed with tau normalized by the selling price.
struct SubscriptionTerms {
    double tau = 0.0;
    double lambda = 0.0;
    double eta = 0.0;
    double beta = 0.0;
};

SubscriptionTerms subscription_terms(const MarketParams& params, double tau, double lambda);

/// Result of a discount search.
struct DiscountSolution {
    double tau_star = 0.0;         ///< full-precision optimizer output
    double tau_star_display = 0.0; ///< rounded to the 0.1% reporting grid
    double expected_profit = 0.0;  ///< objective value at tau_star
    double beta_at_optimum = 0.0;
    std::optional<double> relative_uplift; ///< vs. no-subscription profit; empty if that is <= 0
    bool degenerate = false;               ///< optimum at tau = 0: do not offer
    std::optional<double> std_error;       ///< simulated search only
};

struct OptimizeOptions {
    double grid_step = 0.001;
    bool refine = true; ///< golden-section polish around the best grid point
};

/// Maximizes tau -> subscription_profit(params, tau, beta(tau)) with the
/// Cobb-Douglas share beta(tau) = pi * eta(tau/p, pi, lambda). Grid scan
/// over [0, p-c]; ties break toward the smaller discount.
DiscountSolution optimize_discount_analytic(const MarketParams& params, double lambda,
                                            const OptimizeOptions& options = {});

/// Same grid search with the simulator's mean per-period profit as the
/// objective (common random numbers: every grid point reuses the master
/// seed). No refinement below the grid; reports the standard error at the
/// optimum.
DiscountSolution optimize_discount_simulated(const SimulationConfig& config,
                                             const MarketParams& params, double lambda,
                                             double grid_step = 0.001);

} // namespace subplan
