#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmfrac/errors.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/model.hpp"

namespace rmfrac {

inline constexpr int default_hpm_order = 3;
inline constexpr int max_hpm_order = 10;

struct HpmSolution {
    ModelParams params;
    int order = 0;
    std::vector<FracSeries> x_terms;
    std::vector<FracSeries> y_terms;
    std::vector<std::string> warnings;
};

namespace detail {

// Polynomial in the homotopy parameter p with series coefficients,
// truncated after p^degree.
using PPoly = std::vector<FracSeries>;

inline PPoly ppoly_mul(const PPoly& lhs, const PPoly& rhs, std::size_t degree, const SeriesContext& ctx) {
    PPoly out(degree + 1, FracSeries(ctx));
    for (std::size_t i = 0; i < lhs.size() && i <= degree; ++i) {
        for (std::size_t j = 0; j < rhs.size() && i + j <= degree; ++j) {
            out[i + j] += mul(lhs[i], rhs[j]);
        }
    }
    return out;
}

} // namespace detail

/// Coefficient of p^k in the right-hand sides
///
///   r x (1 - x/K) - alpha x y B(x),   beta x y B(x) - d y,
///
/// with x = sum p^i x_i, y = sum p^j y_j and B the truncated bracket
/// polynomial. All products are collected exactly as polynomials in p.
inline std::pair<FracSeries, FracSeries> homotopy_rhs(int k, std::span<const FracSeries> xs,
                                                      std::span<const FracSeries> ys,
                                                      const ModelParams& params) {
    if (k < 0) {
        throw DomainError("homotopy_rhs: k must be >= 0");
    }
    const auto deg = static_cast<std::size_t>(k);
    if (xs.size() <= deg || ys.size() <= deg) {
        throw DomainError("homotopy_rhs: need x_0..x_k and y_0..y_k");
    }
    const SeriesContext ctx = xs[0].context();
    for (std::size_t i = 0; i <= deg; ++i) {
        detail::require_compatible(xs[0], xs[i], "homotopy_rhs");
        detail::require_compatible(xs[0], ys[i], "homotopy_rhs");
    }
    const detail::PPoly x(xs.begin(), xs.begin() + k + 1);
    const detail::PPoly y(ys.begin(), ys.begin() + k + 1);

    // B(x) by Horner in p-polynomial arithmetic.
    const auto b = bracket_coeffs(params.a, params.bracket_order);
    detail::PPoly bx{constant(ctx, b.back())};
    for (auto it = b.rbegin() + 1; it != b.rend(); ++it) {
        bx = detail::ppoly_mul(bx, x, deg, ctx);
        bx[0] += constant(ctx, *it);
    }
    const auto xx = detail::ppoly_mul(x, x, deg, ctx);
    const auto xyb = detail::ppoly_mul(detail::ppoly_mul(x, y, deg, ctx), bx, deg, ctx);
    auto at = [&](const detail::PPoly& p) { return deg < p.size() ? p[deg] : FracSeries(ctx); };

    FracSeries fx = params.r * x[deg] - (params.r / params.K) * at(xx) - params.alpha * at(xyb);
    FracSeries fy = params.beta * at(xyb) - params.d * y[deg];
    return {std::move(fx), std::move(fy)};
}

/// HPM series to order N: x_0 = delta, y_0 = gamma0,
/// x_{k+1} = J^m rhs_x(k), y_{k+1} = J^n rhs_y(k).
inline HpmSolution hpm_solve(const ModelParams& params, int order = default_hpm_order) {
    params.validate();
    if (order < 0 || order > max_hpm_order) {
        throw DomainError("hpm_solve: order must lie in [0, " + std::to_string(max_hpm_order) + "]");
    }
    const SeriesContext ctx = params.context();
    HpmSolution sol;
    sol.params = params;
    sol.order = order;
    sol.x_terms.push_back(constant(ctx, params.delta));
    sol.y_terms.push_back(constant(ctx, params.gamma0));
    for (int k = 0; k < order; ++k) {
        auto [fx, fy] = homotopy_rhs(k, sol.x_terms, sol.y_terms, params);
        sol.x_terms.push_back(j_integral(fx, Axis::m));
        sol.y_terms.push_back(j_integral(fy, Axis::n));
    }
    if (params.delta >= params.a) {
        sol.warnings.push_back("initial prey density delta >= a: the geometric expansion of 1/(a + x) "
                               "does not converge");
    }
    return sol;
}

inline std::pair<double, double> evaluate_solution(const HpmSolution& sol, double t) {
    double x = 0.0;
    double y = 0.0;
    for (const auto& s : sol.x_terms) {
        x += evaluate(s, t);
    }
    for (const auto& s : sol.y_terms) {
        y += evaluate(s, t);
    }
    return {x, y};
}

} // namespace rmfrac
