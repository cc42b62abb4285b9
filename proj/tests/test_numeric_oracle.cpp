#include <algorithm>
#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "rmfrac/numeric_oracle.hpp"
#include "rmfrac/special_functions.hpp"
#include "rmfrac/validation.hpp"

using namespace rmfrac;

namespace {

ModelParams at(double m, double n) {
    ModelParams p;
    p.m = m;
    p.n = n;
    return p;
}

} // namespace

TEST(Rk4, InitialState) {
    const auto traj = rk4(ModelParams{}, SolverConfig{1.0, 10});
    ASSERT_EQ(traj.times.size(), traj.states.size());
    EXPECT_EQ(traj.times.front(), 0.0);
    EXPECT_EQ(traj.states.front().x, 1.3);
    EXPECT_EQ(traj.states.front().y, 0.6);
    EXPECT_NEAR(traj.times.back(), 1.0, 1e-15);
}

TEST(Rk4, RejectsFractionalOrders) {
    EXPECT_THROW(rk4(at(0.5, 0.5), SolverConfig{}), NonIntegerOrder);
    EXPECT_THROW(rk4(at(1.0, 0.5), SolverConfig{}), NonIntegerOrder);
}

TEST(Rk4, FourthOrderStepHalving) {
    const auto e = checks::rk4_halving_errors(ModelParams{});
    const double r1 = e[0] / e[1];
    const double r2 = e[1] / e[2];
    RecordProperty("ratios", std::to_string(r1) + " " + std::to_string(r2));
    EXPECT_GE(r1, 8.0);
    EXPECT_LE(r1, 32.0);
    EXPECT_GE(r2, 8.0);
    EXPECT_LE(r2, 32.0);
}

TEST(Rk4, TruncatedAndExactHollingGap) {
    const ModelParams p;
    const auto tr = rk4(p, SolverConfig{1.0, 1000, RhsVariant::truncated_bracket});
    const auto ex = rk4(p, SolverConfig{1.0, 1000, RhsVariant::exact_rational});
    const auto bracket = bracket_coeffs(p.a, p.bracket_order);
    double worst_term = 0.0;
    for (const auto& s : tr.states) {
        const double gap = std::abs(bracket_value(bracket, s.x) - 1.0 / (p.a + s.x));
        worst_term = std::max(worst_term, std::max(p.alpha, p.beta) * s.x * s.y * gap);
    }
    const double dx = std::abs(tr.states.back().x - ex.states.back().x);
    const double dy = std::abs(tr.states.back().y - ex.states.back().y);
    RecordProperty("gap", std::to_string(std::max(dx, dy)));
    EXPECT_GT(std::max(dx, dy), 0.0);
    // Perturbation integrated over [0, 1] with a generous growth factor.
    EXPECT_LE(std::max(dx, dy), 2.0 * worst_term);
}

TEST(Fabm, InitialState) {
    const auto traj = fabm_solve(at(0.5, 1.0 / 3.0), SolverConfig{1.0, 50});
    EXPECT_EQ(traj.states.front().x, 1.3);
    EXPECT_EQ(traj.states.front().y, 0.6);
    EXPECT_EQ(traj.states.size(), 51u);
}

TEST(Fabm, IntegerOrderMatchesRk4) {
    const ModelParams p;
    const SolverConfig cfg{1.0, 1000, RhsVariant::exact_rational};
    const auto a = fabm_solve(p, cfg);
    const auto b = rk4(p, cfg);
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        EXPECT_NEAR(a.states[k].x, b.states[k].x, 1e-4);
        EXPECT_NEAR(a.states[k].y, b.states[k].y, 1e-4);
    }
}

TEST(Fabm, ConvergesOnLinearTestProblem) {
    const double e1 = checks::mittag_leffler_oracle_error(250);
    const double e2 = checks::mittag_leffler_oracle_error(500);
    const double e3 = checks::mittag_leffler_oracle_error(1000);
    RecordProperty("errors", std::to_string(e1) + " " + std::to_string(e2) + " " + std::to_string(e3));
    EXPECT_GT(e1 / e2, 1.5);
    EXPECT_GT(e2 / e3, 1.5);
}

TEST(Fabm, PerEquationOrdersAreIndependent) {
    // Two decoupled equations with different orders must reproduce the two
    // scalar runs exactly.
    auto decoupled = [](const std::array<double, 2>& u) { return std::array<double, 2>{-u[0], -2.0 * u[1]}; };
    const auto pair = fabm_integrate<2>({0.4, 0.9}, decoupled, {1.0, 0.5}, 1.0, 200);
    const auto first = fabm_integrate<1>({0.4}, [](const std::array<double, 1>& u) { return std::array<double, 1>{-u[0]}; },
                                         {1.0}, 1.0, 200);
    const auto second = fabm_integrate<1>({0.9}, [](const std::array<double, 1>& u) { return std::array<double, 1>{-2.0 * u[0]}; },
                                          {0.5}, 1.0, 200);
    for (std::size_t k = 0; k < pair.size(); ++k) {
        EXPECT_EQ(pair[k][0], first[k][0]);
        EXPECT_EQ(pair[k][1], second[k][0]);
    }
}

TEST(Fabm, DetectsBlowUp) {
    auto quadratic = [](const std::array<double, 1>& u) { return std::array<double, 1>{u[0] * u[0] * u[0]}; };
    EXPECT_THROW(fabm_integrate<1>({1.0}, quadratic, {10.0}, 10.0, 20), NonFiniteState);
}

TEST(SolverConfig, Validation) {
    EXPECT_THROW(fabm_solve(ModelParams{}, SolverConfig{0.0, 10}), InvalidParams);
    EXPECT_THROW(fabm_solve(ModelParams{}, SolverConfig{1.0, 0}), InvalidParams);
    EXPECT_THROW(fabm_integrate<1>({1.5}, [](const std::array<double, 1>& u) { return u; }, {1.0}, 1.0, 10),
                 DomainError);
}
