#pragma once

#include <cmath>
#include <vector>

#include "subplan/normal.hpp"
#include "subplan/rng.hpp"

namespace subplan::test {

inline bool near(double a, double b, double abs_tol) {
    return std::isfinite(a) && std::fabs(a - b) <= abs_tol;
}

inline bool near_rel(double a, double b, double rel_tol) {
    return std::fabs(a - b) <= rel_tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Exact Binomial(n, p) pmf via a stable multiplicative recurrence.
inline std::vector<double> binomial_pmf(int n, double p) {
    std::vector<double> pmf(n + 1, 0.0);
    // log-space start avoids underflow for the n, p ranges tested here
    double log_term = n * std::log1p(-p);
    pmf[0] = std::exp(log_term);
    for (int k = 1; k <= n; ++k) {
        log_term += std::log(static_cast<double>(n - k + 1)) - std::log(static_cast<double>(k)) +
                    std::log(p) - std::log1p(-p);
        pmf[k] = std::exp(log_term);
    }
    return pmf;
}

inline std::vector<double> binomial_cdf(int n, double p) {
    std::vector<double> cdf = binomial_pmf(n, p);
    for (int k = 1; k <= n; ++k) {
        cdf[k] += cdf[k - 1];
    }
    return cdf;
}

/// Independent quantile oracle: bisection on the CDF.
inline double quantile_by_bisection(double q) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std_normal_cdf(mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Deterministic uniform stream for test-data generation.
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.next_double(); }
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(rng_.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool bernoulli(double p) { return rng_.next_double() < p; }

  private:
    Xoshiro256PlusPlus rng_;
};

} // namespace subplan::test
