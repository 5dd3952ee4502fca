#include "subplan/profit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subplan/normal.hpp"

namespace subplan {

namespace {

struct Bracket {
    double lo, hi;
};

// Scan [lo, hi] on a fixed grid for the first sign change of f, then bisect
// the bracket down to `xtol`. Grid step 1e-3 of the interval keeps the
// near-tangent crossings resolvable.
template <typename F>
std::optional<double> scan_and_bisect(F f, double lo, double hi, double xtol) {
    constexpr int kGridCells = 1000;
    const double step = (hi - lo) / kGridCells;
    double x_prev = lo;
    double f_prev = f(lo);
    if (f_prev == 0.0) {
        return lo;
    }
    std::optional<Bracket> bracket;
    for (int i = 1; i <= kGridCells; ++i) {
        const double x = (i == kGridCells) ? hi : lo + i * step;
        const double fx = f(x);
        if (fx == 0.0) {
            return x;
        }
        if ((f_prev < 0.0) != (fx < 0.0)) {
            bracket = Bracket{x_prev, x};
            break;
        }
        x_prev = x;
        f_prev = fx;
    }
    if (!bracket) {
        return std::nullopt;
    }
    double a = bracket->lo;
    double b = bracket->hi;
    double fa = f(a);
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

double simpson_slice(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(F f, double a, double m, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(fa, flm, fm, m - a);
    const double right = simpson_slice(fm, frm, fb, b - m);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double integrate(F f, double a, double b, double eps) {
    if (b <= a) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson_slice(fa, fm, fb, b - a);
    return adaptive_simpson(f, a, m, b, fa, fm, fb, whole, eps, 48);
}

ProfitDecomposition make_subscription_decomposition(const MarketParams& params, double tau,
                                                    double beta) {
    const double n = params.n;
    const GammaCoefficient g = gamma_coefficient(params.p, params.c, params.alpha);
    ProfitDecomposition out;
    out.i_det = (params.p - tau - params.c) * n * beta;
    out.i_stoch = (params.p - params.c) * n * (1.0 - beta) * params.pi;
    out.pwu = out.i_det + out.i_stoch;
    const double var = n * (1.0 - beta) * params.pi * (1.0 - params.pi);
    out.ecu = g.value * std::sqrt(std::max(0.0, var));
    out.expected_profit = out.pwu - out.ecu;
    return out;
}

double baseline_expected(const MarketParams& params) {
    return baseline_profit(params).expected_profit;
}

} // namespace

AdiShare::AdiShare(double beta) : value(beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::domain_error("AdiShare: beta must lie in [0, 1]");
    }
}

GammaCoefficient gamma_coefficient(double p, double c, double alpha) {
    if (!std::isfinite(p) || !std::isfinite(c) || !(c > 0.0 && c < p)) {
        throw std::domain_error("gamma_coefficient: need 0 < c < p");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("gamma_coefficient: alpha must lie in (0, 1)");
    }
    const double z = std_normal_quantile(alpha);
    return {p * (std_normal_pdf(z) - (1.0 - alpha - c / p) * z)};
}

ProfitDecomposition baseline_profit(const MarketParams& params) {
    params.validate();
    const NormalApprox approx = normal_approx(params);
    const GammaCoefficient g = gamma_coefficient(params.p, params.c, params.alpha);
    ProfitDecomposition out;
    out.i_det = 0.0;
    out.i_stoch = (params.p - params.c) * approx.mu;
    out.pwu = out.i_stoch;
    out.ecu = g.value * approx.sigma;
    out.expected_profit = out.pwu - out.ecu;
    return out;
}

double expected_profit_integral(const MarketParams& params, double q) {
    params.validate();
    if (!std::isfinite(q) || q < 0.0) {
        throw std::domain_error("expected_profit_integral: q must be finite and >= 0");
    }
    const NormalApprox approx = normal_approx(params);
    if (approx.sigma == 0.0) {
        // Point mass at mu.
        return params.p * std::min(approx.mu, q) - params.c * q;
    }
    const double lo = std::max(0.0, approx.mu - 8.0 * approx.sigma);
    const auto integrand = [&](double x) {
        const double z = (x - approx.mu) / approx.sigma;
        return std_normal_pdf(z) / approx.sigma * x;
    };
    const double sold = integrate(integrand, lo, std::min(q, approx.mu + 10.0 * approx.sigma),
                                  1e-6);
    const double tail = 1.0 - std_normal_cdf((q - approx.mu) / approx.sigma);
    return params.p * sold + params.p * q * tail - params.c * q;
}

double ecu_ratio(const MarketParams& params) {
    const ProfitDecomposition base = baseline_profit(params);
    if (!(base.pwu > 0.0)) {
        throw std::domain_error("ecu_ratio: pwu must be positive");
    }
    return base.ecu / base.pwu;
}

double min_viable_pi(int n, double p, double c, double alpha) {
    MarketParams probe{n, 1.0, p, c, alpha};
    probe.validate();
    const auto profit_at = [&](double pi) {
        MarketParams m = probe;
        m.pi = pi;
        return baseline_expected(m);
    };
    if (profit_at(1e-9) >= 0.0) {
        return 0.0;
    }
    const auto root = scan_and_bisect(profit_at, 1e-9, 1.0 - 1e-9, 1e-6);
    return root.value_or(0.0);
}

ProfitDecomposition adi_profit(const MarketParams& params, AdiShare beta) {
    params.validate();
    const NormalApprox approx = normal_approx(params);
    const GammaCoefficient g = gamma_coefficient(params.p, params.c, params.alpha);
    ProfitDecomposition out;
    out.i_det = 0.0;
    out.i_stoch = (params.p - params.c) * approx.mu;
    out.pwu = out.i_stoch;
    const double var =
        params.n * (1.0 - params.pi * beta.value) * params.pi * (1.0 - params.pi);
    out.ecu = g.value * std::sqrt(std::max(0.0, var));
    out.expected_profit = out.pwu - out.ecu;
    return out;
}

AdiUplift adi_uplift(const MarketParams& params, AdiShare beta) {
    const double base = baseline_expected(params);
    const double with_adi = adi_profit(params, beta).expected_profit;
    AdiUplift out;
    out.absolute = with_adi - base;
    if (base > 0.0) {
        out.relative = out.absolute / base;
    }
    return out;
}

ProfitDecomposition subscription_profit(const MarketParams& params, double tau, AdiShare beta) {
    params.validate();
    if (!(tau >= 0.0 && tau < params.p)) {
        throw std::domain_error("subscription_profit: need 0 <= tau < p");
    }
    return make_subscription_decomposition(params, tau, beta.value);
}

double delta(const MarketParams& params, double tau) {
    params.validate();
    return tau - (1.0 - params.pi) * (params.p - params.c);
}

double marginal_profit_wrt_beta(const MarketParams& params, double tau, double beta) {
    params.validate();
    if (beta >= 1.0) {
        throw std::domain_error("marginal_profit_wrt_beta: singular at beta = 1");
    }
    if (!(beta >= 0.0)) {
        throw std::domain_error("marginal_profit_wrt_beta: beta must lie in [0, 1)");
    }
    const GammaCoefficient g = gamma_coefficient(params.p, params.c, params.alpha);
    const double var = params.n * params.pi * (1.0 - params.pi);
    return -delta(params, tau) * params.n +
           0.5 * g.value * std::sqrt(var / (1.0 - beta));
}

double marginal_profit_wrt_tau(const MarketParams& params, double tau, double beta,
                               double dbeta_dtau) {
    if (dbeta_dtau < 0.0) {
        throw std::domain_error("marginal_profit_wrt_tau: dbeta_dtau must be >= 0");
    }
    return -static_cast<double>(params.n) * beta +
           dbeta_dtau * marginal_profit_wrt_beta(params, tau, beta);
}

std::optional<double> critical_pi(int n, double p, double c, double alpha, double tau,
                                  double beta) {
    MarketParams probe{n, 0.5, p, c, alpha};
    probe.validate();
    const AdiShare share(beta);
    const auto gap = [&](double pi) {
        MarketParams m = probe;
        m.pi = pi;
        return subscription_profit(m, tau, share).expected_profit - baseline_expected(m);
    };
    // delta(pi) = 0 at pi0 = 1 - tau/(p-c); the crossing of interest is above it.
    const double pi0 = 1.0 - tau / (p - c);
    const double lo = std::clamp(pi0, 1e-6, 1.0 - 2e-9) + 1e-9;
    return scan_and_bisect(gap, lo, 1.0 - 1e-9, 1e-6);
}

std::optional<double> critical_c(int n, double pi, double p, double alpha, double tau,
                                 double beta) {
    MarketParams probe{n, pi, p, p * 0.5, alpha};
    probe.validate();
    const AdiShare share(beta);
    const auto gap = [&](double c) {
        MarketParams m = probe;
        m.c = c;
        return subscription_profit(m, tau, share).expected_profit - baseline_expected(m);
    };
    return scan_and_bisect(gap, 1e-6, p - 1e-6, 1e-6);
}

std::optional<double> zero_profit_cost(int n, double pi, double p, double alpha) {
    MarketParams probe{n, pi, p, p * 0.5, alpha};
    probe.validate();
    const auto profit_at = [&](double c) {
        MarketParams m = probe;
        m.c = c;
        return baseline_expected(m);
    };
    return scan_and_bisect(profit_at, 1e-6, p - 1e-6, 1e-6);
}

std::optional<double> critical_beta(const MarketParams& params, double tau) {
    params.validate();
    if (delta(params, tau) <= 0.0) {
        return 0.0;
    }
    const auto gap = [&](double beta) {
        return make_subscription_decomposition(params, tau, beta).expected_profit -
               baseline_expected(params);
    };
    // gap(0) = 0 by construction; look for the upcrossing strictly inside.
    if (marginal_profit_wrt_beta(params, tau, 0.0) >= 0.0) {
        return 0.0;
    }
    return scan_and_bisect(gap, 1e-6, 1.0 - 1e-9, 1e-6);
}

SubscriptionUplift uplift_decomposition(const MarketParams& params, double tau, double beta) {
    params.validate();
    const AdiShare share(beta);
    const NormalApprox approx = normal_approx(params);
    const GammaCoefficient g = gamma_coefficient(params.p, params.c, params.alpha);
    SubscriptionUplift out;
    out.deterministic_gain = params.n * share.value * -delta(params, tau);
    out.uncertainty_gain = g.value * approx.sigma * (1.0 - std::sqrt(1.0 - share.value));
    return out;
}

} // namespace subplan
