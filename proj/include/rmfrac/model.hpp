#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rmfrac/errors.hpp"
#include "rmfrac/frac_series.hpp"

namespace rmfrac {

/// Fractional Rosenzweig-MacArthur system
///
///   D^m x = r x (1 - x/K) - alpha x y / (a + x)
///   D^n y = beta x y / (a + x) - d y,     x(0) = delta, y(0) = gamma0.
///
/// Defaults are the reference parameter set with integer orders.
struct ModelParams {
    double r = 0.03;
    double K = 10.0;
    double a = 16.0;
    double alpha = 0.7;
    double beta = 0.6;
    double d = 0.01;
    double delta = 1.3;
    double gamma0 = 0.6;
    double m = 1.0;
    double n = 1.0;
    int bracket_order = 4;
    std::size_t term_cap = default_term_cap;

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InvalidParams(std::string("ModelParams: ") + name + " must be positive and finite");
            }
        };
        positive(r, "r");
        positive(K, "K");
        positive(a, "a");
        positive(alpha, "alpha");
        positive(beta, "beta");
        positive(d, "d");
        positive(delta, "delta");
        positive(gamma0, "gamma0");
        if (!(m > 0.0 && m <= 1.0) || !(n > 0.0 && n <= 1.0)) {
            throw InvalidParams("ModelParams: orders must satisfy 0 < m, n <= 1");
        }
        if (bracket_order < 1) {
            throw InvalidParams("ModelParams: bracket_order must be >= 1");
        }
    }

    SeriesContext context() const { return SeriesContext(m, n, term_cap); }
};

/// Coefficients (-1)^k / a^(k+1), k < order, of the truncated geometric
/// expansion of 1/(a + x).
inline std::vector<double> bracket_coeffs(double a, int order) {
    if (!(a > 0.0)) {
        throw DomainError("bracket_coeffs: a must be > 0");
    }
    if (order < 1) {
        throw DomainError("bracket_coeffs: order must be >= 1");
    }
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(order));
    double c = 1.0 / a;
    for (int k = 0; k < order; ++k) {
        coeffs.push_back(c);
        c *= -1.0 / a;
    }
    return coeffs;
}

inline double bracket_value(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        v = v * x + *it;
    }
    return v;
}

// The geometric expansion of 1/(a + x) needs |x| < a.
inline bool bracket_valid(const ModelParams& p, double x) { return std::abs(x) < p.a; }

} // namespace rmfrac
