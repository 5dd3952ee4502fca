#include "subplan/demand.hpp"

#include <cmath>
#include <stdexcept>

#include "subplan/normal.hpp"

namespace subplan {

void MarketParams::validate() const {
    if (n < 1) {
        throw std::domain_error("MarketParams: n must be >= 1");
    }
    if (!(pi > 0.0 && pi <= 1.0)) {
        throw std::domain_error("MarketParams: pi must lie in (0, 1]");
    }
    if (!std::isfinite(p) || !std::isfinite(c) || !(c > 0.0 && c < p)) {
        throw std::domain_error("MarketParams: need 0 < c < p");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("MarketParams: alpha must lie in (0, 1)");
    }
}

NormalApprox normal_approx(const MarketParams& params) {
    params.validate();
    const double mu = static_cast<double>(params.n) * params.pi;
    // pi in {0, 1} must give exactly 0, not a NaN-prone product.
    const double var = params.pi >= 1.0 ? 0.0 : mu * (1.0 - params.pi);
    return {mu, std::sqrt(var)};
}

double order_quantity(const MarketParams& params) {
    const NormalApprox approx = normal_approx(params);
    if (approx.sigma == 0.0) {
        return approx.mu;
    }
    return approx.mu + approx.sigma * std_normal_quantile(params.alpha);
}

} // namespace subplan
