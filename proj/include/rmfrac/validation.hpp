#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rmfrac/closed_form.hpp"
#include "rmfrac/format.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/hpm_solver.hpp"
#include "rmfrac/numeric_oracle.hpp"
#include "rmfrac/special_functions.hpp"

namespace rmfrac {

/// Largest |a - b| / max(|a|, |b|) over the union of supports; a term
/// present on one side only counts as 1.
inline double max_relative_difference(const FracSeries& a, const FracSeries& b) {
    std::set<MultiIndex> support;
    for (const auto& [idx, c] : a.terms()) support.insert(idx);
    for (const auto& [idx, c] : b.terms()) support.insert(idx);
    double worst = 0.0;
    for (const auto& idx : support) {
        const double ca = a.coefficient(idx);
        const double cb = b.coefficient(idx);
        const double scale = std::max(std::abs(ca), std::abs(cb));
        if (scale > 0.0) {
            worst = std::max(worst, std::abs(ca - cb) / scale);
        }
    }
    return worst;
}

inline constexpr std::array<double, 4> reference_orders = {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};

enum class CheckStatus { pass, fail, info };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::info;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.status == CheckStatus::fail; });
    }

    std::string text() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            const char* tag = c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "INFO";
            os << c.name << ": " << tag;
            if (!c.detail.empty()) {
                os << "  " << c.detail;
            }
            os << '\n';
        }
        os << "overall: " << (all_pass() ? "PASS" : "FAIL") << '\n';
        return os.str();
    }
};

namespace checks {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline CheckStatus gate(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

inline ModelParams with_orders(ModelParams p, double m, double n) {
    p.m = m;
    p.n = n;
    return p;
}

/// HPM terms 0..2 against the reference closed forms for all 16 reference order pairs.
inline CheckResult closed_form_regression(const ModelParams& base, double tol = 1e-12) {
    double worst = 0.0;
    for (double m : reference_orders) {
        for (double n : reference_orders) {
            const ModelParams p = with_orders(base, m, n);
            const auto sol = hpm_solve(p, 2);
            for (int k = 0; k <= 2; ++k) {
                const auto [cx, cy] = closed_form_reference(p, k);
                worst = std::max({worst, max_relative_difference(sol.x_terms[k], cx),
                                  max_relative_difference(sol.y_terms[k], cy)});
            }
        }
    }
    return {"closed-form(0..2)", gate(worst <= tol),
            "max rel diff " + sci(worst) + " over 16 (m, n) pairs, tol " + sci(tol)};
}

/// Printed x_3/y_3 against the collected terms; informational only.
inline CheckResult printed_order3_discrepancy(const ModelParams& p) {
    const auto sol = hpm_solve(p, 3);
    const auto [cx, cy] = closed_form_reference(p, 3);
    std::ostringstream os;
    int mismatches = 0;
    auto scan = [&](const char* which, const FracSeries& got, const FracSeries& printed) {
        std::set<MultiIndex> support;
        for (const auto& [idx, c] : got.terms()) support.insert(idx);
        for (const auto& [idx, c] : printed.terms()) support.insert(idx);
        for (const auto& idx : support) {
            const double a = got.coefficient(idx);
            const double b = printed.coefficient(idx);
            if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
                os << (mismatches++ ? "; " : "") << which << "(" << idx.i << "," << idx.j
                   << ") collected " << sci(a) << " printed " << sci(b);
            }
        }
    };
    scan("x3", sol.x_terms[3], cx);
    scan("y3", sol.y_terms[3], cy);
    return {"printed-order-3 discrepancy", CheckStatus::info,
            mismatches == 0 ? "none" : std::to_string(mismatches) + " documented differences: " + os.str()};
}

/// D^m x_3 == rhs_x(2) and D^n y_3 == rhs_y(2) for all 16 order pairs.
inline CheckResult order3_self_consistency(const ModelParams& base, double tol = 1e-12) {
    double worst = 0.0;
    for (double m : reference_orders) {
        for (double n : reference_orders) {
            const ModelParams p = with_orders(base, m, n);
            const auto sol = hpm_solve(p, 3);
            const auto [fx, fy] = homotopy_rhs(2, sol.x_terms, sol.y_terms, p);
            worst = std::max({worst, max_relative_difference(caputo_derivative(sol.x_terms[3], Axis::m), fx),
                              max_relative_difference(caputo_derivative(sol.y_terms[3], Axis::n), fy)});
        }
    }
    return {"order-3 self-consistency", gate(worst <= tol),
            "max rel diff " + sci(worst) + " over 16 (m, n) pairs, tol " + sci(tol)};
}

struct IntegerOrderErrors {
    double e1 = 0.0; // |series - rk4| at t = 0.1 (max over x, y)
    double e2 = 0.0; // at t = 0.2
};

inline IntegerOrderErrors integer_order_errors(const ModelParams& base) {
    const ModelParams p = with_orders(base, 1.0, 1.0);
    const auto sol = hpm_solve(p, 3);
    // h = 1e-4: rk4 error ~1e-18, far below the O(t^4) truncation being measured.
    const auto ref = rk4(p, SolverConfig{0.2, 2000, RhsVariant::truncated_bracket});
    auto err_at = [&](std::size_t idx) {
        const auto [x, y] = evaluate_solution(sol, ref.times[idx]);
        return std::max(std::abs(x - ref.states[idx].x), std::abs(y - ref.states[idx].y));
    };
    return {err_at(1000), err_at(2000)};
}

inline CheckResult integer_order_consistency(const ModelParams& base) {
    const auto e = integer_order_errors(base);
    const double ratio = e.e2 / e.e1;
    const bool ok = e.e1 <= 1e-6 && ratio >= 8.0 && ratio <= 32.0;
    return {"integer-order vs rk4", gate(ok),
            "e(0.1)=" + sci(e.e1) + " (tol 1e-6), e(0.2)/e(0.1)=" + num(ratio) + " (want [8, 32])"};
}

/// max |u - E_{1/2}(-sqrt t)| on [0, 1] for D^{1/2} u = -u, u(0) = 1.
inline double mittag_leffler_oracle_error(int steps) {
    const auto u = fabm_integrate<1>({0.5}, [](const std::array<double, 1>& v) { return std::array<double, 1>{-v[0]}; },
                                     {1.0}, 1.0, steps);
    double worst = 0.0;
    for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        worst = std::max(worst, std::abs(u[k][0] - mittag_leffler(0.5, -std::sqrt(t))));
    }
    return worst;
}

inline CheckResult mittag_leffler_oracle() {
    const double err = mittag_leffler_oracle_error(1000);
    return {"fabm vs Mittag-Leffler", gate(err <= 1e-4),
            "max abs error " + sci(err) + " on [0, 1] at h = 1e-3 (tol 1e-4)"};
}

inline CheckResult fabm_step_halving() {
    const double e1 = mittag_leffler_oracle_error(250);
    const double e2 = mittag_leffler_oracle_error(500);
    const double e3 = mittag_leffler_oracle_error(1000);
    const bool ok = e1 / e2 > 1.5 && e2 / e3 > 1.5;
    return {"fabm step-halving", gate(ok),
            "errors " + sci(e1) + ", " + sci(e2) + ", " + sci(e3) + " at h = 1/250, 1/500, 1/1000; ratios " +
                num(e1 / e2) + ", " + num(e2 / e3) + " (want > 1.5)"};
}

inline std::array<double, 3> rk4_halving_errors(const ModelParams& base) {
    const ModelParams p = with_orders(base, 1.0, 1.0);
    const auto ref = rk4(p, SolverConfig{1.0, 4096, RhsVariant::truncated_bracket}).states.back();
    std::array<double, 3> errs{};
    for (int i = 0; i < 3; ++i) {
        const auto s = rk4(p, SolverConfig{1.0, 1 << i, RhsVariant::truncated_bracket}).states.back();
        errs[i] = std::max(std::abs(s.x - ref.x), std::abs(s.y - ref.y));
    }
    return errs;
}

inline CheckResult rk4_step_halving(const ModelParams& base) {
    const auto e = rk4_halving_errors(base);
    const double r1 = e[0] / e[1];
    const double r2 = e[1] / e[2];
    const bool ok = r1 >= 8.0 && r1 <= 32.0 && r2 >= 8.0 && r2 <= 32.0;
    return {"rk4 step-halving", gate(ok),
            "errors at t=1 " + sci(e[0]) + ", " + sci(e[1]) + ", " + sci(e[2]) + " for h = 1, 1/2, 1/4; ratios " +
                num(r1) + ", " + num(r2) + " (want [8, 32])"};
}

struct WindowScan {
    double max_error_in_gate = 0.0; // over [0, gate_t]
    double window = 0.0;            // largest T with error <= tol on all of [0, T]
};

/// Order-3 series vs fabm (truncated bracket, h = 1e-3).
inline WindowScan scan_agreement(const ModelParams& p, double gate_t, double scan_t, double tol) {
    const int steps = static_cast<int>(std::lround(scan_t / 1e-3));
    const auto oracle = fabm_solve(p, SolverConfig{scan_t, steps, RhsVariant::truncated_bracket});
    const auto sol = hpm_solve(p, 3);
    WindowScan scan;
    bool inside = true;
    for (std::size_t k = 0; k < oracle.times.size(); ++k) {
        const double t = oracle.times[k];
        const auto [x, y] = evaluate_solution(sol, t);
        const double err = std::max(std::abs(x - oracle.states[k].x), std::abs(y - oracle.states[k].y));
        if (t <= gate_t + 1e-12) {
            scan.max_error_in_gate = std::max(scan.max_error_in_gate, err);
        }
        if (inside && err <= tol) {
            scan.window = t;
        } else {
            inside = false;
        }
    }
    return scan;
}

inline CheckResult fractional_cross_validation(const ModelParams& p, double scan_t) {
    const auto s = scan_agreement(p, 0.5, std::max(scan_t, 0.5), 1e-3);
    return {"series vs fabm (m=" + num(p.m) + ", n=" + num(p.n) + ")",
            gate(s.max_error_in_gate <= 1e-3),
            "max abs error on [0, 0.5] " + sci(s.max_error_in_gate) + " (tol 1e-3); validity window T0 = " +
                num(s.window) + " (scanned to " + num(std::max(scan_t, 0.5)) + ")"};
}

} // namespace checks

/// Full validation run used by the CLI `validate` command.
inline ValidationReport run_validation(const ModelParams& params, double scan_t) {
    params.validate();
    ValidationReport report;
    report.checks.push_back(checks::closed_form_regression(params));
    report.checks.push_back(checks::printed_order3_discrepancy(params));
    report.checks.push_back(checks::order3_self_consistency(params));
    report.checks.push_back(checks::integer_order_consistency(params));
    report.checks.push_back(checks::rk4_step_halving(params));
    report.checks.push_back(checks::mittag_leffler_oracle());
    report.checks.push_back(checks::fabm_step_halving());
    report.checks.push_back(checks::fractional_cross_validation(params, scan_t));
    return report;
}

} // namespace rmfrac
