#pragma once

#include <optional>

#include "subplan/demand.hpp"

namespace subplan {

/// Per-unit-of-sigma cost coefficient combining price, cost and service
/// level: gamma = p * ( pdf(z_a) - (1 - alpha - c/p) * z_a ) with
/// z_a = quantile(alpha). Strictly positive for alpha >= 0.5 and 0 < c < p.
struct GammaCoefficient {
    double value = 0.0;
};

GammaCoefficient gamma_coefficient(double p, double c, double alpha);

/// Expected-profit split: deterministic revenue parts minus the expected
/// costs of uncertainty.
///
/// Baseline and ADI scenarios have i_det = 0 and pwu = i_stoch; with
/// subscriptions pwu = i_det + i_stoch. Always expected_profit = pwu - ecu.
struct ProfitDecomposition {
    double pwu = 0.0;
    double i_det = 0.0;
    double i_stoch = 0.0;
    double ecu = 0.0;
    double expected_profit = 0.0;
};

/// Share of customers providing advance commitment (ADI or subscription).
struct AdiShare {
    double value = 0.0;

    AdiShare() = default;
    explicit AdiShare(double beta);
};

/// pwu = (p-c)*n*pi, ecu = gamma * sigma.
ProfitDecomposition baseline_profit(const MarketParams& params);

/// Quadrature oracle for the closed form:
///   p * int_0^q f(x) x dx + p*q*(1 - F(q)) - c*q
/// with f the normal-approximation density. Adaptive Simpson, absolute
/// tolerance 1e-6. Throws std::domain_error for non-finite or negative q.
double expected_profit_integral(const MarketParams& params, double q);

/// ecu / pwu. Throws std::domain_error if pwu <= 0.
double ecu_ratio(const MarketParams& params);

/// Smallest pi with non-negative baseline expected profit (bisection to
/// 1e-6; 0 if profitable for every pi).
double min_viable_pi(int n, double p, double c, double alpha);

/// Second booking process with a share beta of committed customers:
/// ecu shrinks to gamma * sqrt(n * (1 - pi*beta) * pi * (1-pi)).
ProfitDecomposition adi_profit(const MarketParams& params, AdiShare beta);

/// Profit gain from ADI. `relative` is empty when the baseline expected
/// profit is not strictly positive.
struct AdiUplift {
    double absolute = 0.0;
    std::optional<double> relative;
};

AdiUplift adi_uplift(const MarketParams& params, AdiShare beta);

/// Subscription profit at discount tau with subscribing share beta:
///   i_det = (p - tau - c) * n * beta
///   i_stoch = (p - c) * n * (1 - beta) * pi
///   ecu = gamma * sqrt(n * (1 - beta) * pi * (1 - pi))
/// Requires 0 <= tau < p.
ProfitDecomposition subscription_profit(const MarketParams& params, double tau, AdiShare beta);

/// delta = tau - (1 - pi) * (p - c). A non-positive delta means discounts
/// raise the deterministic revenue component.
double delta(const MarketParams& params, double tau);

/// dE_sub/dbeta = -delta*n + (gamma/2) * sqrt(n*pi*(1-pi) / (1-beta)).
/// The deterministic-revenue term enters as -delta*n; matches central
/// finite differences of subscription_profit. Throws for beta >= 1.
double marginal_profit_wrt_beta(const MarketParams& params, double tau, double beta);

/// dE_sub/dtau = -n*beta + dbeta_dtau * marginal_profit_wrt_beta(...).
double marginal_profit_wrt_tau(const MarketParams& params, double tau, double beta,
                               double dbeta_dtau);

/// Buying probability above which the subscription offer stops paying off
/// (root of E_sub - E_base above the delta = 0 point). Empty if there is
/// no crossing.
std::optional<double> critical_pi(int n, double p, double c, double alpha, double tau,
                                  double beta);

/// Supply cost above which the subscription offer stops paying off.
std::optional<double> critical_c(int n, double pi, double p, double alpha, double tau,
                                 double beta);

/// Supply cost at which the baseline expected profit hits zero.
std::optional<double> zero_profit_cost(int n, double pi, double p, double alpha);

/// Smallest beta > 0 with E_sub >= E_base for a discount with delta > 0.
/// Returns 0 when the offer is (weakly) beneficial for every share
/// (including the delta <= 0 regime) and empty when no share is enough.
std::optional<double> critical_beta(const MarketParams& params, double tau);

/// E_sub - E_base split into the demand-shift gain n*beta*(-delta) and the
/// uncertainty-reduction gain gamma*sigma*(1 - sqrt(1-beta)). The two terms
/// sum to the profit difference exactly.
struct SubscriptionUplift {
    double deterministic_gain = 0.0;
    double uncertainty_gain = 0.0;
};

SubscriptionUplift uplift_decomposition(const MarketParams& params, double tau, double beta);

} // namespace subplan
