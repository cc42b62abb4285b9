#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "rmfrac/closed_form.hpp"
#include "rmfrac/hpm_solver.hpp"
#include "rmfrac/numeric_oracle.hpp"
#include "rmfrac/validation.hpp"
#include "test_support.hpp"

using namespace rmfrac;

namespace {

const std::vector<double> orders = {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};

ModelParams at(double m, double n) {
    ModelParams p;
    p.m = m;
    p.n = n;
    return p;
}

} // namespace

TEST(BracketCoeffs, Examples) {
    const auto b = bracket_coeffs(16.0, 4);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_DOUBLE_EQ(b[0], 1.0 / 16.0);
    EXPECT_DOUBLE_EQ(b[1], -1.0 / 256.0);
    EXPECT_DOUBLE_EQ(b[2], 1.0 / 4096.0);
    EXPECT_DOUBLE_EQ(b[3], -1.0 / 65536.0);
    EXPECT_EQ(bracket_coeffs(1.0, 4), (std::vector<double>{1.0, -1.0, 1.0, -1.0}));
    EXPECT_THROW(bracket_coeffs(0.0, 4), DomainError);
    EXPECT_THROW(bracket_coeffs(16.0, 0), DomainError);
}

TEST(BracketCoeffs, TruncationGapAtInitialPrey) {
    const double x = 1.3;
    const double direct = 1.0 / 16.0 - x / 256.0 + x * x / 4096.0 - x * x * x / 65536.0;
    const double value = bracket_value(bracket_coeffs(16.0, 4), x);
    EXPECT_NEAR(value, direct, 1e-17);
    EXPECT_NEAR(value, 0.0578009, 5e-8);
    EXPECT_NEAR(1.0 / 17.3, 0.0578035, 5e-8);
    // Next term of the alternating series bounds the gap.
    EXPECT_LE(std::abs(value - 1.0 / 17.3), x * x * x * x / std::pow(16.0, 5));
}

TEST(HomotopyRhs, OrderZeroMatchesFirstLevelEquations) {
    const ModelParams p;
    const SeriesContext ctx = p.context();
    const std::vector<FracSeries> xs{constant(ctx, p.delta)};
    const std::vector<FracSeries> ys{constant(ctx, p.gamma0)};
    const auto [fx, fy] = homotopy_rhs(0, xs, ys, p);
    const double B = bracket_value(bracket_coeffs(p.a, 4), p.delta);
    const double wx = p.r * p.delta * (1.0 - p.delta / p.K) - p.alpha * p.delta * p.gamma0 * B;
    const double wy = p.beta * p.delta * p.gamma0 * B - p.d * p.gamma0;
    ASSERT_EQ(fx.size(), 1u);
    ASSERT_EQ(fy.size(), 1u);
    EXPECT_NEAR(fx.coefficient({0, 0}), wx, 1e-17);
    EXPECT_NEAR(fy.coefficient({0, 0}), wy, 1e-17);
    EXPECT_NEAR(wx, 2.371e-3, 5e-7);
    EXPECT_NEAR(wy, 2.105e-2, 5e-6);
}

TEST(HomotopyRhs, OrderOneMatchesPrintedSecondLevel) {
    for (double m : orders) {
        for (double n : orders) {
            const ModelParams p = at(m, n);
            const auto sol = hpm_solve(p, 1);
            const auto& x0 = sol.x_terms[0];
            const auto& x1 = sol.x_terms[1];
            const auto& y0 = sol.y_terms[0];
            const auto& y1 = sol.y_terms[1];
            const double a = p.a;
            const auto ctx = p.context();
            const FracSeries B0 = constant(ctx, 1.0 / a) - x0 * (1.0 / (a * a)) + x0 * x0 * (1.0 / (a * a * a)) -
                                  x0 * x0 * x0 * (1.0 / (a * a * a * a));
            const FracSeries B1 = x0 * x1 * (2.0 / (a * a * a)) - x1 * (1.0 / (a * a)) -
                                  x0 * x0 * x1 * (3.0 / (a * a * a * a));
            const FracSeries cross = x0 * y1 + x1 * y0;
            const FracSeries want_x =
                (p.r * x1 - x0 * x1 * (2.0 * p.r / p.K)) - p.alpha * (x0 * y0 * B1) - p.alpha * (cross * B0);
            const FracSeries want_y = p.beta * (x0 * y0 * B1) + p.beta * (cross * B0) - p.d * y1;
            const auto [fx, fy] = homotopy_rhs(1, sol.x_terms, sol.y_terms, p);
            EXPECT_LE(max_relative_difference(fx, want_x), 1e-13);
            EXPECT_LE(max_relative_difference(fy, want_y), 1e-13);
        }
    }
}

TEST(HomotopyRhs, Errors) {
    const ModelParams p;
    const std::vector<FracSeries> xs{constant(p.context(), 1.0)};
    const std::vector<FracSeries> ys{constant(SeriesContext(0.5, 1.0), 1.0)};
    EXPECT_THROW(homotopy_rhs(0, xs, ys, p), ContextMismatch);
    EXPECT_THROW(homotopy_rhs(1, xs, xs, p), DomainError);
    EXPECT_THROW(homotopy_rhs(-1, xs, xs, p), DomainError);
}

TEST(HpmSolve, LowOrderStructure) {
    const auto s0 = hpm_solve(at(0.5, 0.5), 0);
    ASSERT_EQ(s0.x_terms.size(), 1u);
    EXPECT_EQ(s0.x_terms[0].coefficient({0, 0}), 1.3);
    EXPECT_EQ(s0.y_terms[0].coefficient({0, 0}), 0.6);

    const auto s2 = hpm_solve(at(0.5, 1.0 / 3.0), 2);
    EXPECT_EQ(s2.x_terms[1].size(), 1u);
    EXPECT_NE(s2.x_terms[1].coefficient({1, 0}), 0.0);
    EXPECT_NE(s2.y_terms[1].coefficient({0, 1}), 0.0);
    std::set<MultiIndex> x2, y2;
    for (const auto& [idx, c] : s2.x_terms[2].terms()) x2.insert(idx);
    for (const auto& [idx, c] : s2.y_terms[2].terms()) y2.insert(idx);
    EXPECT_EQ(x2, (std::set<MultiIndex>{{2, 0}, {1, 1}}));
    EXPECT_EQ(y2, (std::set<MultiIndex>{{1, 1}, {0, 2}}));
}

TEST(HpmSolve, SupportLattice) {
    for (double m : orders) {
        for (double n : orders) {
            const auto sol = hpm_solve(at(m, n), 7);
            for (int k = 1; k <= 7; ++k) {
                for (const auto& [idx, c] : sol.x_terms[k].terms()) {
                    EXPECT_EQ(idx.i + idx.j, k);
                    EXPECT_GE(idx.i, 1);
                }
                for (const auto& [idx, c] : sol.y_terms[k].terms()) {
                    EXPECT_EQ(idx.i + idx.j, k);
                    EXPECT_GE(idx.j, 1);
                }
            }
        }
    }
}

TEST(HpmSolve, MatchesClosedFormThroughOrderTwo) {
    for (double m : orders) {
        for (double n : orders) {
            const ModelParams p = at(m, n);
            const auto sol = hpm_solve(p, 2);
            for (int k = 0; k <= 2; ++k) {
                const auto [cx, cy] = closed_form_reference(p, k);
                EXPECT_LE(max_relative_difference(sol.x_terms[k], cx), 1e-12) << "k=" << k << " m=" << m << " n=" << n;
                EXPECT_LE(max_relative_difference(sol.y_terms[k], cy), 1e-12) << "k=" << k << " m=" << m << " n=" << n;
            }
        }
    }
}

TEST(HpmSolve, HierarchyEquationsHoldAtOrderThree) {
    for (double m : orders) {
        for (double n : orders) {
            const ModelParams p = at(m, n);
            const auto sol = hpm_solve(p, 3);
            const auto [fx, fy] = homotopy_rhs(2, sol.x_terms, sol.y_terms, p);
            EXPECT_LE(max_relative_difference(caputo_derivative(sol.x_terms[3], Axis::m), fx), 1e-12);
            EXPECT_LE(max_relative_difference(caputo_derivative(sol.y_terms[3], Axis::n), fy), 1e-12);
        }
    }
}

TEST(HpmSolve, MatchesBruteForceOracle) {
    for (double m : orders) {
        for (double n : orders) {
            for (int bracket : {1, 4, 6}) {
                ModelParams p = at(m, n);
                p.bracket_order = bracket;
                const auto sol = hpm_solve(p, 5);
                const auto [bx, by] = rmfrac::testing::brute_force_hpm(p, 5);
                for (int k = 0; k <= 5; ++k) {
                    EXPECT_LE(max_relative_difference(sol.x_terms[k], bx[k]), 1e-12) << "k=" << k;
                    EXPECT_LE(max_relative_difference(sol.y_terms[k], by[k]), 1e-12) << "k=" << k;
                }
            }
        }
    }
}

TEST(HpmSolve, PrintedOrderThreeDiffersOnlyWhereDocumented) {
    // The printed x_3 repeats the t^(m+n) term of x_2 and adds a t^(2m)
    // term; exact collection produces neither.
    const ModelParams p = at(0.5, 1.0 / 3.0);
    const auto sol = hpm_solve(p, 3);
    const auto printed = closed_form_reference(p, 3);
    EXPECT_EQ(sol.x_terms[3].coefficient({1, 1}), 0.0);
    EXPECT_EQ(sol.x_terms[3].coefficient({2, 0}), 0.0);
    EXPECT_NE(printed.first.coefficient({1, 1}), 0.0);
    EXPECT_NE(printed.first.coefficient({2, 0}), 0.0);
    EXPECT_NEAR(printed.first.coefficient({1, 1}), sol.x_terms[2].coefficient({1, 1}), 1e-18);
    // The t^(3n) predator term has no bracket-curvature contribution and agrees.
    EXPECT_LE(std::abs(printed.second.coefficient({0, 3}) - sol.y_terms[3].coefficient({0, 3})),
              1e-12 * std::abs(sol.y_terms[3].coefficient({0, 3})));
}

TEST(HpmSolve, IntegerOrderAgreesWithRk4) {
    const ModelParams p; // m = n = 1
    const auto sol = hpm_solve(p, 3);
    const auto ref = rk4(p, SolverConfig{0.1, 1000, RhsVariant::truncated_bracket});
    const auto [x, y] = evaluate_solution(sol, 0.1);
    EXPECT_NEAR(x, ref.states.back().x, 1e-6);
    EXPECT_NEAR(y, ref.states.back().y, 1e-6);
}

TEST(HpmSolve, HollingTermLinearInRatesAtFirstOrder) {
    // With r = d = 0 the first-level right-hand side is -alpha x y B and
    // beta x y B, so scaling alpha and beta scales it.
    ModelParams p;
    p.r = 0.0;
    p.d = 0.0;
    ModelParams q = p;
    q.alpha *= 3.5;
    q.beta *= 3.5;
    const auto ctx = p.context();
    const std::vector<FracSeries> xs{constant(ctx, p.delta)};
    const std::vector<FracSeries> ys{constant(ctx, p.gamma0)};
    const auto x1p = j_integral(homotopy_rhs(0, xs, ys, p).first, Axis::m);
    const auto x1q = j_integral(homotopy_rhs(0, xs, ys, q).first, Axis::m);
    EXPECT_NEAR(x1q.coefficient({1, 0}), 3.5 * x1p.coefficient({1, 0}), 1e-16);
    EXPECT_THROW(hpm_solve(p, 1), InvalidParams);
}

TEST(HpmSolve, EvaluateSolution) {
    const auto sol = hpm_solve(at(0.5, 2.0 / 3.0), 3);
    const auto [x, y] = evaluate_solution(sol, 0.0);
    EXPECT_EQ(x, 1.3);
    EXPECT_EQ(y, 0.6);
    const auto s0 = hpm_solve(at(0.5, 0.5), 0);
    EXPECT_EQ(evaluate_solution(s0, 4.0), (std::pair{1.3, 0.6}));
}

TEST(HpmSolve, RejectsInvalidInput) {
    ModelParams p;
    EXPECT_THROW(hpm_solve(p, 11), DomainError);
    EXPECT_THROW(hpm_solve(p, -1), DomainError);
    p.m = 1.2;
    EXPECT_THROW(hpm_solve(p, 2), InvalidParams);
    p = ModelParams{};
    p.bracket_order = 0;
    EXPECT_THROW(hpm_solve(p, 2), InvalidParams);
    p = ModelParams{};
    p.K = -1.0;
    EXPECT_THROW(hpm_solve(p, 2), InvalidParams);
}

TEST(HpmSolve, WarnsWhenBracketDiverges) {
    ModelParams p;
    EXPECT_TRUE(hpm_solve(p, 1).warnings.empty());
    p.delta = 20.0;
    EXPECT_EQ(hpm_solve(p, 1).warnings.size(), 1u);
}

TEST(HpmSolve, MaximumOrderStaysUnderTermCap) {
    const auto sol = hpm_solve(at(1.0 / 3.0, 0.5), max_hpm_order);
    EXPECT_EQ(sol.x_terms.size(), static_cast<std::size_t>(max_hpm_order + 1));
    ModelParams tight = at(1.0 / 3.0, 0.5);
    tight.term_cap = 3;
    EXPECT_THROW(hpm_solve(tight, 6), TermCapExceeded);
}

TEST(ClosedForm, Examples) {
    const ModelParams p = at(0.5, 1.0 / 3.0);
    const auto [x0, y0] = closed_form_reference(p, 0);
    EXPECT_EQ(x0.coefficient({0, 0}), 1.3);
    EXPECT_EQ(y0.coefficient({0, 0}), 0.6);
    const auto [x1, y1] = closed_form_reference(p, 1);
    const double B = 1.0 / 16 - 1.3 / 256 + 1.69 / 4096 - 2.197 / 65536;
    EXPECT_NEAR(x1.coefficient({1, 0}) * std::tgamma(1.5), 0.03 * 1.3 - 0.03 * 1.69 / 10 - 0.7 * 1.3 * 0.6 * B, 1e-15);
    EXPECT_NEAR(y1.coefficient({0, 1}) * std::tgamma(1.0 + 1.0 / 3.0), 0.6 * 1.3 * 0.6 * B - 0.01 * 0.6, 1e-15);
    EXPECT_THROW(closed_form_reference(p, 4), DomainError);
}
