#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rmfrac/frac_series.hpp"
#include "rmfrac/rl_quadrature.hpp"
#include "test_support.hpp"

using namespace rmfrac;

TEST(RlQuadrature, PlainIntegralOfOne) {
    const SeriesContext ctx(1.0, 1.0);
    EXPECT_NEAR(rl_quadrature(constant(ctx, 1.0), 1.0, 2.0), 2.0, 1e-12);
}

TEST(RlQuadrature, PowerRuleOnConstants) {
    for (double m : {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
        const SeriesContext ctx(m, 1.0);
        for (double t : {0.1, 0.7, 1.9}) {
            const double c = -2.75;
            EXPECT_NEAR(rl_quadrature(constant(ctx, c), m, t), c * std::pow(t, m) / std::tgamma(m + 1.0), 1e-8)
                << "m = " << m << ", t = " << t;
        }
    }
}

TEST(RlQuadrature, ThreeTermSeriesAgainstCoefficientRule) {
    const SeriesContext ctx(0.5, 1.0 / 3.0);
    const FracSeries s(ctx, {{{0, 0}, 1.2}, {{1, 0}, -0.8}, {{0, 2}, 2.5}});
    EXPECT_NEAR(rl_quadrature(s, 0.5, 0.7), evaluate(j_integral(s, Axis::m), 0.7), 1e-6);
}

TEST(RlQuadrature, AgreesWithJIntegralOnRandomSeries) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> time(0.01, 2.0);
    for (double m : {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
        const SeriesContext ctx(m, 0.5);
        for (int iter = 0; iter < 60; ++iter) {
            const auto s = rmfrac::testing::random_series(rng, ctx);
            const double t = time(rng);
            EXPECT_NEAR(evaluate(j_integral(s, Axis::m), t), rl_quadrature(s, m, t), 1e-6)
                << "m = " << m << ", t = " << t << "\n"
                << to_string(s);
        }
    }
}

TEST(RlQuadrature, SemigroupByNestedQuadrature) {
    std::mt19937_64 rng(99);
    const SeriesContext ctx(0.5, 1.0 / 3.0);
    const QuadratureOptions loose{1e-5, 12};
    for (int iter = 0; iter < 5; ++iter) {
        const auto s = rmfrac::testing::random_series(rng, ctx, 4, 5.0, 3);
        const double nu1 = 0.4;
        const double nu2 = 0.75;
        for (double t : {0.3, 0.7, 1.1}) {
            auto inner = [&](double x) {
                return rl_integral([&](double y) { return evaluate(s, y); }, nu1, x, loose);
            };
            const double nested = rl_integral(inner, nu2, t, loose);
            EXPECT_NEAR(nested, rl_quadrature(s, nu1 + nu2, t), 1e-4) << "t = " << t;
        }
    }
}

TEST(RlQuadrature, Errors) {
    const SeriesContext ctx(0.5, 0.5);
    const auto one = constant(ctx, 1.0);
    EXPECT_THROW(rl_quadrature(one, 0.0, 1.0), DomainError);
    EXPECT_THROW(rl_quadrature(one, 0.5, 0.0), DomainError);
    EXPECT_THROW(rl_quadrature(one, 0.5, 1.0, QuadratureOptions{1e-300, 4}), ConvergenceError);
}
