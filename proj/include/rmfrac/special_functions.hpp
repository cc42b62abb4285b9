#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "rmfrac/errors.hpp"

namespace rmfrac {

namespace detail {

//
// Lanczos approximation with g = 607/128 and 15 coefficients
// (Godfrey's set, also used by Numerical Recipes 3rd ed. gammln).
// Relative error is below 1e-15 on the positive real axis when the
// sum is evaluated in double precision.
//
inline constexpr double lanczos_g = 607.0 / 128.0;

inline constexpr std::array<double, 15> lanczos_coeffs = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

inline double lanczos_sum(double xm1) {
    double sum = lanczos_coeffs[0];
    for (std::size_t k = 1; k < lanczos_coeffs.size(); ++k) {
        sum += lanczos_coeffs[k] / (xm1 + static_cast<double>(k));
    }
    return sum;
}

// Test hook: when nonzero, gamma(x) returns gamma(x) * (1 + eps * x).
// Used as a negative control by the validation report; never set in
// production paths.
inline std::atomic<double> gamma_corruption{0.0};

inline void require_positive(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw DomainError(std::string(fn) + ": argument must be > 0, got " + std::to_string(x));
    }
}

} // namespace detail

/// Gamma function for x > 0.
inline double gamma(double x) {
    detail::require_positive(x, "gamma");
    const double xm1 = x - 1.0;
    const double t = xm1 + detail::lanczos_g + 0.5;
    // t^(xm1+0.5) split in two halves so the power does not overflow
    // before exp(-t) brings it back down.
    const double half = std::pow(t, 0.5 * (xm1 + 0.5));
    double result = std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) *
                    detail::lanczos_sum(xm1);
    if (!std::isfinite(result)) {
        throw OverflowError("gamma: result overflows for x = " + std::to_string(x));
    }
    const double eps = detail::gamma_corruption.load(std::memory_order_relaxed);
    if (eps != 0.0) {
        result *= 1.0 + eps * x;
    }
    return result;
}

inline double log_gamma(double x) {
    detail::require_positive(x, "log_gamma");
    const double xm1 = x - 1.0;
    const double t = xm1 + detail::lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(xm1));
}

/// Gamma(a) / Gamma(b). Switches to the log form once either argument
/// exceeds 25 so intermediate values stay finite.
inline double gamma_ratio(double a, double b) {
    if (a > 25.0 || b > 25.0) {
        return std::exp(log_gamma(a) - log_gamma(b));
    }
    return gamma(a) / gamma(b);
}

inline constexpr int mittag_leffler_max_terms = 200;

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1),
/// summed directly.
///
/// Accepts alpha in (0, 2] (alpha = 2 gives cosh/cos). The series is only
/// usable where cancellation stays small: the largest term magnitude times
/// machine epsilon must stay below 1e-12, otherwise ConvergenceError is
/// thrown. In practice this admits |z| <= 5 for alpha >= 1 and |z| <= 3 for
/// alpha = 1/2; the validated domain is |z| <= 3 for every alpha in [1/2, 2].
/// The sum stops once a term falls below 1e-16 while decreasing, and throws
/// ConvergenceError after mittag_leffler_max_terms terms.
inline double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw DomainError("mittag_leffler: alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!std::isfinite(z)) {
        throw DomainError("mittag_leffler: z must be finite");
    }
    if (z == 0.0) {
        return 1.0;
    }
    const double log_abs_z = std::log(std::abs(z));
    const bool negative = z < 0.0;
    double sum = 1.0;
    double largest = 1.0;
    double previous = 1.0;
    for (int k = 1; k < mittag_leffler_max_terms; ++k) {
        const double arg = alpha * k + 1.0;
        double magnitude;
        if (arg > 25.0) {
            magnitude = std::exp(k * log_abs_z - log_gamma(arg));
        } else {
            magnitude = std::pow(std::abs(z), k) / gamma(arg);
        }
        sum += (negative && (k % 2 == 1)) ? -magnitude : magnitude;
        largest = std::max(largest, magnitude);
        if (magnitude < 1e-16 && magnitude <= previous) {
            if (largest * 2.220446049250313e-16 > 1e-12) {
                throw ConvergenceError("mittag_leffler: catastrophic cancellation for z = " +
                                       std::to_string(z));
            }
            return sum;
        }
        previous = magnitude;
    }
    throw ConvergenceError("mittag_leffler: term cap reached for alpha = " + std::to_string(alpha) +
                           ", z = " + std::to_string(z));
}

} // namespace rmfrac
