#pragma once

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "rmfrac/errors.hpp"
#include "rmfrac/figures.hpp"
#include "rmfrac/format.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/hpm_solver.hpp"
#include "rmfrac/run_spec.hpp"
#include "rmfrac/special_functions.hpp"
#include "rmfrac/validation.hpp"

namespace rmfrac {

namespace detail {

inline void emit(const RunSpec& spec, const std::string& content) {
    if (spec.out.empty() || spec.out == "-") {
        std::cout << content;
        std::cout.flush();
    } else {
        write_file(spec.out, content);
    }
}

inline std::string parameter_header(const RunSpec& spec) {
    const auto& p = spec.params;
    std::ostringstream os;
    os << "# r = " << format_number(p.r) << '\n'
       << "# K = " << format_number(p.K) << '\n'
       << "# a = " << format_number(p.a) << '\n'
       << "# alpha = " << format_number(p.alpha) << '\n'
       << "# beta = " << format_number(p.beta) << '\n'
       << "# d = " << format_number(p.d) << '\n'
       << "# x0 = " << format_number(p.delta) << '\n'
       << "# y0 = " << format_number(p.gamma0) << '\n'
       << "# m = " << format_number(p.m) << '\n'
       << "# n = " << format_number(p.n) << '\n'
       << "# order = " << spec.hpm_order << '\n'
       << "# bracket-order = " << p.bracket_order << '\n';
    return os.str();
}

// Restores the gamma test hook on scope exit.
class GammaCorruptionGuard {
public:
    explicit GammaCorruptionGuard(double eps) : saved_(gamma_corruption.exchange(eps)) {}
    ~GammaCorruptionGuard() { gamma_corruption.store(saved_); }
    GammaCorruptionGuard(const GammaCorruptionGuard&) = delete;
    GammaCorruptionGuard& operator=(const GammaCorruptionGuard&) = delete;

private:
    double saved_;
};

} // namespace detail

/// Series dump: parameter header, then for each k a "x k" / "y k" group
/// line followed by that term's "i j coefficient" lines.
inline std::string series_dump(const RunSpec& spec) {
    spec.validate();
    const auto sol = hpm_solve(spec.params, spec.hpm_order);
    std::ostringstream os;
    os << "# rmfrac series dump\n" << detail::parameter_header(spec);
    for (int k = 0; k <= sol.order; ++k) {
        os << "x " << k << '\n';
        serialize(os, sol.x_terms[k]);
        os << "y " << k << '\n';
        serialize(os, sol.y_terms[k]);
    }
    return os.str();
}

inline int cmd_series(const RunSpec& spec) {
    detail::emit(spec, series_dump(spec));
    return 0;
}

inline std::string trajectory_csv(const RunSpec& spec) {
    spec.validate();
    if (spec.method == Method::rk4 && (spec.params.m != 1.0 || spec.params.n != 1.0)) {
        throw NonIntegerOrder("trajectory: rk4 requires --m 1 --n 1 (got m = " + format_number(spec.params.m) +
                              ", n = " + format_number(spec.params.n) + ")");
    }
    if (spec.method == Method::hpm) {
        for (const auto& w : hpm_solve(spec.params, 0).warnings) {
            std::cerr << "warning: " << w << '\n';
        }
    }
    const Trajectory traj = trajectory_for(spec, spec.method);
    for (const auto& s : traj.states) {
        if (!bracket_valid(spec.params, s.x)) {
            std::cerr << "warning: |x| reaches a = " << format_number(spec.params.a)
                      << "; the truncated bracket expansion is invalid there\n";
            break;
        }
    }
    return detail::trajectory_csv(traj);
}

inline int cmd_trajectory(const RunSpec& spec) {
    detail::emit(spec, trajectory_csv(spec));
    return 0;
}

/// Writes the CSV bundle(s) for spec.figure into the directory spec.out
/// (default "figures") plus diagnostics.txt.
inline int cmd_figures(const RunSpec& spec) {
    spec.validate();
    const std::filesystem::path dir = spec.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(spec.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
    }
    std::ostringstream diag;
    diag << "# HPM curves: order " << spec.hpm_order << ", t in [0, " << format_number(spec.t_max) << "], "
         << spec.points << " points\n";
    for (FigureId id : parse_figures(spec.figure)) {
        const auto bundle = figure_bundle(spec, id);
        for (const auto& f : bundle.files) {
            write_file((dir / f.name).string(), f.content);
        }
        for (const auto& line : bundle.diagnostics) {
            diag << line << '\n';
        }
    }
    write_file((dir / "diagnostics.txt").string(), diag.str());
    return 0;
}

/// Runs the validation checks; exit status 0 only when every gate passes.
inline int cmd_validate(const RunSpec& spec, std::string* report_text = nullptr) {
    spec.validate();
    std::string text;
    {
        detail::GammaCorruptionGuard guard(spec.gamma_corruption);
        text = run_validation(spec.params, spec.oracle_t_max).text();
    }
    detail::emit(spec, text);
    if (report_text) {
        *report_text = text;
    }
    return text.find("overall: PASS") != std::string::npos ? 0 : 1;
}

} // namespace rmfrac
