#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "rmfrac/errors.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/special_functions.hpp"

namespace rmfrac {

struct QuadratureOptions {
    double tolerance = 1e-10;
    int max_level = 12;
};

//
// Numerical Riemann-Liouville integral
//
//   J^nu f(t) = 1/Gamma(nu) * int_0^t (t - s)^(nu - 1) f(s) ds.
//
// The substitution s = t (1 - u^(1/nu)) absorbs the kernel exactly:
//
//   J^nu f(t) = t^nu / Gamma(nu + 1) * int_0^1 f(t (1 - u^(1/nu))) du,
//
// leaving a bounded integrand whose only roughness is the behaviour of f
// near s = 0 (u -> 1), e.g. s^(1/3) from fractional exponents. That
// endpoint is handled by tanh-sinh quadrature on u in (0, 1). The step is
// halved until two successive levels agree to the tolerance; the last
// difference is the error estimate. Points are generated from the
// complement 1 - u so that s stays accurate near the origin.
//
template <class F>
double rl_integral(F&& f, double nu, double t, QuadratureOptions opts = {}) {
    if (!(nu > 0.0)) {
        throw DomainError("rl_integral: order must be > 0, got " + std::to_string(nu));
    }
    if (!(t >= 0.0)) {
        throw DomainError("rl_integral: t must be >= 0, got " + std::to_string(t));
    }
    if (t == 0.0) {
        return 0.0;
    }
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double x_max = 4.0;

    auto node = [&](double x) {
        const double s = half_pi * std::sinh(x);
        const double cs = std::cosh(s);
        const double w = half_pi * std::cosh(x) / (2.0 * cs * cs);
        if (w == 0.0) {
            return 0.0;
        }
        // log u = -log1p(exp(-2 s)); 1 - u^(1/nu) = -expm1(log u / nu)
        const double log_u = -std::log1p(std::exp(-2.0 * s));
        const double frac = -std::expm1(log_u / nu);
        return w * f(t * frac);
    };

    double h = 1.0;
    double sum = node(0.0);
    for (double x = h; x <= x_max; x += h) {
        sum += node(x) + node(-x);
    }
    double estimate = h * sum;
    for (int level = 1; level <= opts.max_level; ++level) {
        h *= 0.5;
        for (double x = h; x <= x_max; x += 2.0 * h) {
            sum += node(x) + node(-x);
        }
        const double next = h * sum;
        const double scale = std::pow(t, nu) / gamma(nu + 1.0);
        const double error = scale * std::abs(next - estimate);
        estimate = next;
        if (level >= 3 && error < opts.tolerance) {
            return scale * estimate;
        }
    }
    throw ConvergenceError("rl_integral: no convergence to " + std::to_string(opts.tolerance) +
                           " after " + std::to_string(opts.max_level) + " halvings");
}

/// J^nu applied to a series by direct quadrature of the defining integral.
inline double rl_quadrature(const FracSeries& s, double nu, double t, QuadratureOptions opts = {}) {
    if (!(t > 0.0)) {
        throw DomainError("rl_quadrature: t must be > 0, got " + std::to_string(t));
    }
    return rl_integral([&s](double x) { return evaluate(s, x); }, nu, t, opts);
}

} // namespace rmfrac
