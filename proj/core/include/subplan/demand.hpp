#pragma once

namespace subplan {

/// One SKU / customer-segment scenario.
///
/// Demand is the number of buyers among n customers who each buy one unit
/// independently with probability pi, i.e. Binomial(n, pi), planned against
/// its normal approximation.
struct MarketParams {
    int n = 0;          ///< customer base size
    double pi = 0.0;    ///< individual buying probability, (0, 1]
    double p = 1.0;     ///< selling price per unit
    double c = 0.0;     ///< supply cost per unit, 0 < c < p
    double alpha = 0.97; ///< service level target, (0, 1)

    /// Throws std::domain_error if any invariant is violated.
    void validate() const;
};

/// Normal approximation of segment demand.
struct NormalApprox {
    double mu = 0.0;
    double sigma = 0.0;
};

/// mu = n*pi, sigma = sqrt(n*pi*(1-pi)). sigma is exactly 0 for pi = 1.
NormalApprox normal_approx(const MarketParams& params);

/// Service-level order quantity q = mu + sigma * quantile(alpha).
/// Kept continuous; integerization is a simulator concern.
double order_quantity(const MarketParams& params);

} // namespace subplan
