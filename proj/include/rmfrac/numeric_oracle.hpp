#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rmfrac/errors.hpp"
#include "rmfrac/model.hpp"
#include "rmfrac/special_functions.hpp"

namespace rmfrac {

enum class RhsVariant { truncated_bracket, exact_rational };

struct SolverConfig {
    double t_max = 1.0;
    int steps = 1000;
    RhsVariant rhs_variant = RhsVariant::truncated_bracket;

    double step() const { return t_max / steps; }

    void validate() const {
        if (!(t_max > 0.0) || !std::isfinite(t_max)) {
            throw InvalidParams("SolverConfig: t_max must be positive and finite");
        }
        if (steps < 1) {
            throw InvalidParams("SolverConfig: steps must be >= 1");
        }
    }
};

struct State {
    double x = 0.0;
    double y = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
};

/// Right-hand side of the predator-prey system for the chosen variant.
class ModelRhs {
public:
    ModelRhs(const ModelParams& p, RhsVariant variant)
        : p_(p), variant_(variant), bracket_(bracket_coeffs(p.a, p.bracket_order)) {}

    std::array<double, 2> operator()(const std::array<double, 2>& u) const {
        const double x = u[0];
        const double y = u[1];
        const double holling =
            variant_ == RhsVariant::exact_rational ? 1.0 / (p_.a + x) : bracket_value(bracket_, x);
        const double predation = x * y * holling;
        return {p_.r * x * (1.0 - x / p_.K) - p_.alpha * predation, p_.beta * predation - p_.d * y};
    }

private:
    ModelParams p_;
    RhsVariant variant_;
    std::vector<double> bracket_;
};

namespace detail {

template <std::size_t N>
void require_finite(const std::array<double, N>& u, int step, const char* solver) {
    for (double v : u) {
        if (!std::isfinite(v)) {
            throw NonFiniteState(std::string(solver) + ": non-finite state at step " + std::to_string(step));
        }
    }
}

inline Trajectory to_trajectory(const std::vector<std::array<double, 2>>& u, double h) {
    Trajectory traj;
    traj.times.reserve(u.size());
    traj.states.reserve(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        traj.times.push_back(static_cast<double>(k) * h);
        traj.states.push_back({u[k][0], u[k][1]});
    }
    return traj;
}

// Convolution weights of the product rectangle (predictor) and product
// trapezoid (corrector) rules on a uniform grid, for one order.
struct FabmWeights {
    double order;
    double predictor_scale; // h^a / Gamma(a + 1)
    double corrector_scale; // h^a / Gamma(a + 2)
    std::vector<double> rect; // b_d = (d+1)^a - d^a
    std::vector<double> trap; // A_d = (d+2)^(a+1) + d^(a+1) - 2 (d+1)^(a+1)

    FabmWeights(double a, double h, int steps)
        : order(a),
          predictor_scale(std::pow(h, a) / gamma(a + 1.0)),
          corrector_scale(std::pow(h, a) / gamma(a + 2.0)),
          rect(static_cast<std::size_t>(steps) + 1),
          trap(static_cast<std::size_t>(steps) + 1) {
        const double a1 = a + 1.0;
        for (int d = 0; d <= steps; ++d) {
            const double dd = d;
            rect[d] = std::pow(dd + 1.0, a) - std::pow(dd, a);
            trap[d] = std::pow(dd + 2.0, a1) + std::pow(dd, a1) - 2.0 * std::pow(dd + 1.0, a1);
        }
    }

    // Weight of f_0 in the corrector for the step k -> k+1.
    double first(int k) const {
        const double kk = k;
        return std::pow(kk, order + 1.0) - (kk - order) * std::pow(kk + 1.0, order);
    }
};

} // namespace detail

//
// Fractional Adams-Bashforth-Moulton (PECE) for the Caputo system
// D^{a_i} u_i = f_i(u), one order per equation, on a uniform grid:
//
//   predictor  u^P_{k+1} = u_0 + h^a/Gamma(a+1) sum_{j<=k} b_{k-j} f_j
//   corrector  u_{k+1}   = u_0 + h^a/Gamma(a+2) (f(u^P_{k+1}) + a_{0,k+1} f_0
//                                                + sum_{1<=j<=k} A_{k-j} f_j)
//
// One corrector sweep per step. Cost is O(steps^2) from the memory term.
// Returns the states at the steps + 1 grid points.
//
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> fabm_integrate(const std::array<double, N>& orders, const Rhs& rhs,
                                                  const std::array<double, N>& u0, double t_max, int steps) {
    SolverConfig{t_max, steps}.validate();
    const double h = t_max / steps;
    std::vector<detail::FabmWeights> weights;
    weights.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (!(orders[i] > 0.0 && orders[i] <= 1.0)) {
            throw DomainError("fabm_integrate: orders must lie in (0, 1]");
        }
        weights.emplace_back(orders[i], h, steps);
    }

    std::vector<std::array<double, N>> u;
    std::vector<std::array<double, N>> f;
    u.reserve(static_cast<std::size_t>(steps) + 1);
    f.reserve(static_cast<std::size_t>(steps) + 1);
    u.push_back(u0);
    f.push_back(rhs(u0));

    for (int k = 0; k < steps; ++k) {
        std::array<double, N> predicted{};
        std::array<double, N> history{};
        for (std::size_t i = 0; i < N; ++i) {
            const auto& w = weights[i];
            double rect_sum = 0.0;
            double trap_sum = w.first(k) * f[0][i];
            for (int j = 0; j <= k; ++j) {
                rect_sum += w.rect[k - j] * f[j][i];
            }
            for (int j = 1; j <= k; ++j) {
                trap_sum += w.trap[k - j] * f[j][i];
            }
            predicted[i] = u0[i] + w.predictor_scale * rect_sum;
            history[i] = trap_sum;
        }
        const auto fp = rhs(predicted);
        std::array<double, N> next{};
        for (std::size_t i = 0; i < N; ++i) {
            next[i] = u0[i] + weights[i].corrector_scale * (fp[i] + history[i]);
        }
        detail::require_finite(next, k + 1, "fabm");
        u.push_back(next);
        f.push_back(rhs(next));
    }
    return u;
}

/// Fractional predictor-corrector solution of the predator-prey system with
/// orders (m, n).
inline Trajectory fabm_solve(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    const ModelRhs rhs(params, cfg.rhs_variant);
    const auto u = fabm_integrate<2>({params.m, params.n}, rhs, {params.delta, params.gamma0}, cfg.t_max,
                                     cfg.steps);
    return detail::to_trajectory(u, cfg.step());
}

/// Classical fourth-order Runge-Kutta; integer orders only.
inline Trajectory rk4(const ModelParams& params, const SolverConfig& cfg) {
    params.validate();
    cfg.validate();
    if (params.m != 1.0 || params.n != 1.0) {
        throw NonIntegerOrder("rk4: requires m = n = 1, got m = " + std::to_string(params.m) +
                              ", n = " + std::to_string(params.n));
    }
    const ModelRhs f(params, cfg.rhs_variant);
    const double h = cfg.step();
    std::vector<std::array<double, 2>> u;
    u.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    u.push_back({params.delta, params.gamma0});
    auto axpy = [](const std::array<double, 2>& v, double s, const std::array<double, 2>& dv) {
        return std::array<double, 2>{v[0] + s * dv[0], v[1] + s * dv[1]};
    };
    for (int k = 0; k < cfg.steps; ++k) {
        const auto& v = u.back();
        const auto k1 = f(v);
        const auto k2 = f(axpy(v, 0.5 * h, k1));
        const auto k3 = f(axpy(v, 0.5 * h, k2));
        const auto k4 = f(axpy(v, h, k3));
        std::array<double, 2> next{v[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                                   v[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
        detail::require_finite(next, k + 1, "rk4");
        u.push_back(next);
    }
    return detail::to_trajectory(u, h);
}

} // namespace rmfrac
