#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "subplan/demand.hpp"
#include "subplan/normal.hpp"
#include "subplan/profit.hpp"
#include "test_support.hpp"

using namespace subplan;
using test::near;
using test::near_rel;

namespace {

const MarketParams kBasic{500, 0.5, 1.0, 0.85, 0.97};

MarketParams with_pi(double pi) {
    MarketParams m = kBasic;
    m.pi = pi;
    return m;
}

} // namespace

TEST_CASE("gamma coefficient") {
    CHECK(near(gamma_coefficient(1.0, 0.85, 0.97).value, 1.6104, 1e-3));
    CHECK(near(gamma_coefficient(1.0, 0.85, 0.97).value, 1.6102927101, 1e-7));
    CHECK(near(gamma_coefficient(1.0, 0.85, 0.50).value, 0.3989422804, 1e-9));
    CHECK(near(gamma_coefficient(1.0, 0.90, 0.97).value, 1.7044, 1e-3));

    SUBCASE("positive for alpha >= 0.5") {
        for (double c = 0.05; c < 1.0; c += 0.05) {
            for (double alpha = 0.5; alpha < 0.999; alpha += 0.025) {
                CHECK(gamma_coefficient(1.0, c, alpha).value > 0.0);
            }
        }
    }

    SUBCASE("domain errors") {
        CHECK_THROWS_AS(gamma_coefficient(1.0, 1.0, 0.97), std::domain_error);
        CHECK_THROWS_AS(gamma_coefficient(1.0, 0.0, 0.97), std::domain_error);
        CHECK_THROWS_AS(gamma_coefficient(1.0, 0.85, 1.0), std::domain_error);
    }
}

TEST_CASE("baseline profit reproduces the reference decomposition") {
    const ProfitDecomposition basic = baseline_profit(kBasic);
    CHECK(near(basic.pwu, 37.50, 1e-9));
    CHECK(near(basic.ecu, 18.00, 0.01));
    CHECK(near(basic.expected_profit, 19.50, 0.01));

    const ProfitDecomposition mid = baseline_profit({100, 0.75, 1.0, 0.85, 0.97});
    CHECK(near(mid.pwu, 11.25, 1e-9));
    CHECK(near(mid.ecu, 6.97, 0.01));

    const ProfitDecomposition certain = baseline_profit({777, 1.0, 1.0, 0.85, 0.97});
    CHECK(certain.ecu == 0.0);
    CHECK(certain.expected_profit == certain.pwu);
}

TEST_CASE("quadrature oracle agrees with the closed form") {
    const double q = order_quantity(kBasic);
    const double integral = expected_profit_integral(kBasic, q);
    CHECK(near(integral, 19.50, 0.01));
    CHECK(near(integral, baseline_profit(kBasic).expected_profit, 1e-4));

    SUBCASE("degenerate density") {
        const MarketParams certain{300, 1.0, 1.0, 0.85, 0.97};
        CHECK(expected_profit_integral(certain, 300.0) == doctest::Approx(0.15 * 300).epsilon(1e-12));
    }
    SUBCASE("nothing ordered, nothing sold") {
        CHECK(expected_profit_integral(kBasic, 0.0) == 0.0);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(expected_profit_integral(kBasic, -1.0), std::domain_error);
        CHECK_THROWS_AS(expected_profit_integral(kBasic, std::nan("")), std::domain_error);
    }
}

TEST_CASE("closed form vs quadrature on 200 random scenarios") {
    test::TestRng rng(20240817);
    for (int i = 0; i < 200; ++i) {
        MarketParams m;
        m.n = rng.uniform_int(100, 2000);
        m.pi = rng.uniform(0.2, 0.95);
        m.p = rng.uniform(0.5, 2.0);
        m.c = m.p * rng.uniform(0.3, 0.93);
        m.alpha = rng.uniform(0.55, 0.99);
        const double expected = baseline_profit(m).expected_profit;
        const double integral = expected_profit_integral(m, order_quantity(m));
        CHECK(std::fabs(integral - expected) <= 1e-4 * std::max(1.0, std::fabs(expected)));
    }
}

TEST_CASE("ecu ratio") {
    MarketParams no_safety = kBasic;
    no_safety.alpha = 0.5;
    CHECK(near(ecu_ratio(no_safety), 0.119, 5e-3));
    CHECK(near(ecu_ratio(no_safety), 0.118942, 1e-5));

    MarketParams tight = kBasic;
    tight.c = 0.9;
    tight.alpha = 0.995;
    CHECK(ecu_ratio(tight) > 1.0);

    CHECK(ecu_ratio(with_pi(1.0)) == 0.0);
}

TEST_CASE("minimum viable buying probability") {
    const double pi_min = min_viable_pi(500, 1.0, 0.85, 0.97);
    CHECK(near(pi_min, 0.188, 2e-3));

    SUBCASE("matches the closed form from squaring the zero-profit condition") {
        const double g = gamma_coefficient(1.0, 0.85, 0.97).value;
        const double closed = g * g / (0.15 * 0.15 * 500 + g * g);
        CHECK(near(pi_min, closed, 1e-4));
        CHECK(near(closed, 0.1873, 1e-4));
    }
    SUBCASE("vanishes with a huge margin") {
        CHECK(min_viable_pi(500, 1.0, 0.001, 0.97) < 1e-3);
    }
}

TEST_CASE("profit with advance demand information") {
    CHECK(near(adi_profit(with_pi(0.25), AdiShare(0.5)).expected_profit, 4.17, 0.01));
    CHECK(near(adi_profit(kBasic, AdiShare(1.0)).expected_profit, 24.77, 0.01));

    const ProfitDecomposition none = adi_profit(kBasic, AdiShare(0.0));
    const ProfitDecomposition base = baseline_profit(kBasic);
    CHECK(none.expected_profit == base.expected_profit);
    CHECK(none.ecu == base.ecu);

    SUBCASE("nondecreasing in the committed share") {
        double previous = -1e9;
        for (double beta = 0.0; beta <= 1.0; beta += 0.05) {
            const double value = adi_profit(kBasic, AdiShare(beta)).expected_profit;
            CHECK(value >= previous);
            previous = value;
        }
    }
}

TEST_CASE("information uplift") {
    const AdiUplift big = adi_uplift(with_pi(0.25), AdiShare(1.0));
    CHECK(near(big.absolute, 2.09, 0.01));
    REQUIRE(big.relative.has_value());
    CHECK(near(*big.relative, 0.6614, 5e-4));

    const AdiUplift mid = adi_uplift(kBasic, AdiShare(0.5));
    CHECK(near(mid.absolute, 2.41, 0.01));
    CHECK(near(*mid.relative, 0.1237, 5e-4));

    // The reference table prints 15.88% here; its own absolute column gives
    // 3.77 / 19.50 = 19.33%, which is what the formula yields.
    const AdiUplift flagged = adi_uplift(kBasic, AdiShare(0.75));
    CHECK(near(flagged.absolute, 3.77, 0.01));
    CHECK(near(*flagged.relative, 0.1933, 1e-3));
    CHECK(near(*flagged.relative, 0.193395, 1e-5));

    SUBCASE("relative part undefined for a loss-making baseline") {
        const MarketParams losing{50, 0.5, 1.0, 0.85, 0.97};
        REQUIRE(baseline_profit(losing).expected_profit < 0.0);
        const AdiUplift uplift = adi_uplift(losing, AdiShare(0.5));
        CHECK(!uplift.relative.has_value());
        CHECK(uplift.absolute > 0.0);
    }
}

TEST_CASE("subscription profit") {
    CHECK(near(subscription_profit(kBasic, 0.023, AdiShare(0.0896)).expected_profit, 22.65,
               0.02));

    const ProfitDecomposition none = subscription_profit(kBasic, 0.031, AdiShare(0.0));
    CHECK(none.expected_profit == baseline_profit(kBasic).expected_profit);

    const ProfitDecomposition all = subscription_profit(kBasic, 0.031, AdiShare(1.0));
    CHECK(all.ecu == 0.0);
    CHECK(all.expected_profit == doctest::Approx((1.0 - 0.031 - 0.85) * 500).epsilon(1e-12));

    SUBCASE("ecu nonincreasing in the subscribing share") {
        double previous = 1e9;
        for (double beta = 0.0; beta <= 1.0; beta += 0.05) {
            const double value = subscription_profit(kBasic, 0.05, AdiShare(beta)).ecu;
            CHECK(value <= previous);
            previous = value;
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(subscription_profit(kBasic, -0.01, AdiShare(0.1)), std::domain_error);
        CHECK_THROWS_AS(subscription_profit(kBasic, 1.0, AdiShare(0.1)), std::domain_error);
        CHECK_THROWS_AS(AdiShare(1.5), std::domain_error);
    }
}

TEST_CASE("delta condition") {
    CHECK(delta(kBasic, 0.075) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(near(delta(kBasic, 0.023), -0.052, 1e-12));
    CHECK(delta(with_pi(1.0), 0.0) == 0.0);
}

TEST_CASE("marginal effect of an additional subscriber") {
    CHECK(near(marginal_profit_wrt_beta(kBasic, 0.075, 0.0), 9.00, 0.01));
    CHECK_THROWS_AS(marginal_profit_wrt_beta(kBasic, 0.075, 1.0), std::domain_error);

    SUBCASE("matches central finite differences") {
        test::TestRng rng(7);
        for (int i = 0; i < 50; ++i) {
            MarketParams m;
            m.n = rng.uniform_int(100, 1500);
            m.pi = rng.uniform(0.1, 0.95);
            m.p = 1.0;
            m.c = rng.uniform(0.3, 0.92);
            m.alpha = rng.uniform(0.6, 0.99);
            const double tau = rng.uniform(0.0, 0.12);
            const double beta = rng.uniform(0.0, 0.9);
            const double h = 1e-6;
            const double fd = (subscription_profit(m, tau, AdiShare(beta + h)).expected_profit -
                               subscription_profit(m, tau, AdiShare(beta - h)).expected_profit) /
                              (2.0 * h);
            CHECK(near_rel(marginal_profit_wrt_beta(m, tau, beta), fd, 1e-5));
        }
    }

    SUBCASE("strictly increasing in beta when delta <= 0") {
        for (double tau : {0.0, 0.023, 0.075}) {
            REQUIRE(delta(kBasic, tau) <= 0.0);
            double previous = -1e18;
            for (double beta = 0.0; beta <= 0.99; beta += 0.01) {
                const double value = marginal_profit_wrt_beta(kBasic, tau, beta);
                CHECK(value > previous);
                previous = value;
            }
        }
    }
}

TEST_CASE("marginal effect of the discount") {
    CHECK(marginal_profit_wrt_tau(kBasic, 0.05, 0.2, 0.0) == -500.0 * 0.2);
    CHECK_THROWS_AS(marginal_profit_wrt_tau(kBasic, 0.05, 0.2, -1.0), std::domain_error);

    SUBCASE("chain rule against the composite finite difference") {
        const double lambda = 0.5;
        const auto beta_of = [&](double tau) {
            return kBasic.pi * std::cbrt(tau * kBasic.pi * lambda);
        };
        const auto composite = [&](double tau) {
            return subscription_profit(kBasic, tau, AdiShare(beta_of(tau))).expected_profit;
        };
        for (double tau : {0.01, 0.023, 0.05, 0.1}) {
            const double h = 1e-6;
            const double fd = (composite(tau + h) - composite(tau - h)) / (2.0 * h);
            const double dbeta = kBasic.pi * std::cbrt(kBasic.pi * lambda) /
                                 (3.0 * std::cbrt(tau * tau));
            const double analytic = marginal_profit_wrt_tau(kBasic, tau, beta_of(tau), dbeta);
            CHECK(near_rel(analytic, fd, 1e-5));
        }
    }
}

TEST_CASE("critical buying probability") {
    const auto root = critical_pi(500, 1.0, 0.85, 0.97, 0.075, 0.1);
    REQUIRE(root.has_value());
    CHECK(near(*root, 0.62, 0.01));
    CHECK(near(*root, 0.619608, 1e-3));

    SUBCASE("independent grid-scan oracle") {
        const double g = gamma_coefficient(1.0, 0.85, 0.97).value;
        const auto gap = [&](double pi) {
            const double d = 0.075 - (1.0 - pi) * 0.15;
            return -500.0 * 0.1 * d +
                   g * std::sqrt(500.0 * pi * (1.0 - pi)) * (1.0 - std::sqrt(0.9));
        };
        double crossing = 0.0;
        for (double pi = 0.5; pi < 1.0; pi += 1e-4) {
            if (gap(pi) >= 0.0 && gap(pi + 1e-4) < 0.0) {
                crossing = pi;
                break;
            }
        }
        CHECK(near(*root, crossing, 1e-3));
    }

    SUBCASE("free information never crosses") {
        CHECK(!critical_pi(500, 1.0, 0.85, 0.97, 0.0, 0.1).has_value());
    }
}

TEST_CASE("critical supply cost") {
    const auto root = critical_c(500, 0.5, 1.0, 0.97, 0.075, 0.1);
    REQUIRE(root.has_value());
    CHECK(near(*root, 0.889, 2e-3));

    const auto zero = zero_profit_cost(500, 0.5, 1.0, 0.97);
    REQUIRE(zero.has_value());
    CHECK(near(*zero, 0.922, 2e-3));

    SUBCASE("zero-profit bound has a linear closed form") {
        const double z = std_normal_quantile(0.97);
        const double f = std_normal_pdf(z);
        const double sigma = std::sqrt(125.0);
        const double closed =
            (250.0 - sigma * f + 0.03 * sigma * z) / (250.0 + sigma * z);
        CHECK(near(closed, 0.9219, 1e-4));
        CHECK(near(*zero, closed, 1e-4));
    }
}

TEST_CASE("critical subscribing share") {
    const auto crossing = critical_beta(kBasic, 0.10);
    REQUIRE(crossing.has_value());
    CHECK(near(*crossing, 0.807, 5e-3));

    SUBCASE("scan oracle") {
        const auto gap = [](double beta) {
            return -12.5 * beta + 18.005 * (1.0 - std::sqrt(1.0 - beta));
        };
        double first = 0.0;
        for (double beta = 1e-3; beta < 1.0; beta += 1e-4) {
            if (gap(beta) >= 0.0) {
                first = beta;
                break;
            }
        }
        CHECK(near(*crossing, first, 5e-3));
    }

    CHECK(critical_beta(kBasic, 0.09) == 0.0);  // beneficial for every share
    CHECK(critical_beta(kBasic, 0.075) == 0.0); // delta = 0
    CHECK(!critical_beta(kBasic, 0.12).has_value());

    SUBCASE("near-tangent crossing at tau = 0.11 is still resolved") {
        const auto tangent = critical_beta(kBasic, 0.11);
        REQUIRE(tangent.has_value());
        CHECK(near(*tangent, 0.99917, 5e-4));
    }
}

TEST_CASE("uplift decomposition") {
    const SubscriptionUplift split = uplift_decomposition(kBasic, 0.023, 0.0896);
    CHECK(near(split.deterministic_gain, 2.33, 0.02));
    CHECK(near(split.uncertainty_gain, 0.82, 0.02));
    CHECK(near(split.deterministic_gain + split.uncertainty_gain, 3.15, 0.02));

    SUBCASE("sums to the profit difference exactly") {
        test::TestRng rng(99);
        for (int i = 0; i < 40; ++i) {
            MarketParams m;
            m.n = rng.uniform_int(50, 1500);
            m.pi = rng.uniform(0.1, 0.95);
            m.p = 1.0;
            m.c = rng.uniform(0.3, 0.92);
            m.alpha = rng.uniform(0.6, 0.99);
            const double tau = rng.uniform(0.0, 0.07);
            const double beta = rng.uniform(0.0, 1.0);
            const SubscriptionUplift parts = uplift_decomposition(m, tau, beta);
            const double diff = subscription_profit(m, tau, AdiShare(beta)).expected_profit -
                                baseline_profit(m).expected_profit;
            CHECK(near(parts.deterministic_gain + parts.uncertainty_gain, diff, 1e-9));
        }
    }

    SUBCASE("edges") {
        const SubscriptionUplift none = uplift_decomposition(kBasic, 0.023, 0.0);
        CHECK(none.deterministic_gain == 0.0);
        CHECK(none.uncertainty_gain == 0.0);
        const SubscriptionUplift balanced = uplift_decomposition(kBasic, 0.075, 0.0896);
        CHECK(near(balanced.deterministic_gain, 0.0, 1e-12));
        CHECK(near(balanced.uncertainty_gain, 0.82, 0.02));
    }
}

TEST_CASE("structural properties of the decomposition") {
    SUBCASE("ecu peaks at pi = 0.5 and is symmetric") {
        const double peak = baseline_profit(with_pi(0.5)).ecu;
        for (double pi = 0.05; pi < 1.0; pi += 0.05) {
            CHECK(baseline_profit(with_pi(pi)).ecu <= peak + 1e-12);
            CHECK(near_rel(baseline_profit(with_pi(pi)).ecu,
                           baseline_profit(with_pi(1.0 - pi)).ecu, 1e-12));
        }
    }
    SUBCASE("pwu scales linearly, ecu with sqrt(2)") {
        const ProfitDecomposition one = baseline_profit(kBasic);
        MarketParams doubled = kBasic;
        doubled.n = 1000;
        const ProfitDecomposition two = baseline_profit(doubled);
        CHECK(near_rel(two.pwu, 2.0 * one.pwu, 1e-12));
        CHECK(near_rel(two.ecu, std::sqrt(2.0) * one.ecu, 1e-12));
    }
    SUBCASE("profit gap vanishes at the thresholds") {
        const double pi_crit = *critical_pi(500, 1.0, 0.85, 0.97, 0.075, 0.1);
        CHECK(near(subscription_profit(with_pi(pi_crit), 0.075, AdiShare(0.1)).expected_profit,
                   baseline_profit(with_pi(pi_crit)).expected_profit, 1e-4));

        const double c_crit = *critical_c(500, 0.5, 1.0, 0.97, 0.075, 0.1);
        MarketParams at_cost = kBasic;
        at_cost.c = c_crit;
        CHECK(near(subscription_profit(at_cost, 0.075, AdiShare(0.1)).expected_profit,
                   baseline_profit(at_cost).expected_profit, 1e-4));

        const double beta_crit = *critical_beta(kBasic, 0.10);
        CHECK(near(subscription_profit(kBasic, 0.10, AdiShare(beta_crit)).expected_profit,
                   baseline_profit(kBasic).expected_profit, 1e-4));
    }
}
