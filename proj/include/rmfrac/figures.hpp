#pragma once

#include <algorithm>
#include <array>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "rmfrac/errors.hpp"
#include "rmfrac/format.hpp"
#include "rmfrac/hpm_solver.hpp"
#include "rmfrac/numeric_oracle.hpp"
#include "rmfrac/run_spec.hpp"

namespace rmfrac {

enum class FigureId { fig1i, fig1ii, fig2i, fig2ii, fig3i, fig3ii, fig4 };

inline constexpr std::array<FigureId, 7> all_figures = {FigureId::fig1i, FigureId::fig1ii, FigureId::fig2i,
                                                        FigureId::fig2ii, FigureId::fig3i, FigureId::fig3ii,
                                                        FigureId::fig4};

inline std::string figure_name(FigureId id) {
    switch (id) {
    case FigureId::fig1i: return "1i";
    case FigureId::fig1ii: return "1ii";
    case FigureId::fig2i: return "2i";
    case FigureId::fig2ii: return "2ii";
    case FigureId::fig3i: return "3i";
    case FigureId::fig3ii: return "3ii";
    case FigureId::fig4: return "4";
    }
    return "?";
}

inline std::vector<FigureId> parse_figures(const std::string& s) {
    if (s == "all") {
        return {all_figures.begin(), all_figures.end()};
    }
    for (FigureId id : all_figures) {
        if (figure_name(id) == s) {
            return {id};
        }
    }
    throw InvalidParams("unknown figure '" + s + "' (expected 1i, 1ii, 2i, 2ii, 3i, 3ii, 4 or all)");
}

struct CsvFile {
    std::string name;
    std::string content;
};

struct FigureBundle {
    std::vector<CsvFile> files;
    std::vector<std::string> diagnostics;
};

namespace detail {

struct OrderLabel {
    double value;
    const char* label;
};

inline constexpr std::array<OrderLabel, 4> figure_orders = {
    OrderLabel{1.0 / 3.0, "1of3"}, OrderLabel{0.5, "1of2"}, OrderLabel{2.0 / 3.0, "2of3"}, OrderLabel{1.0, "1"}};

inline constexpr int surface_order_count = 19; // 0.10, 0.15, ..., 1.00

inline double surface_order(int k) { return 0.1 + 0.05 * k; }

inline std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t,x,y\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        write_csv_row(os, {traj.times[i], traj.states[i].x, traj.states[i].y});
    }
    return os.str();
}

inline ModelParams with_orders(ModelParams p, double m, double n) {
    p.m = m;
    p.n = n;
    return p;
}

// HPM curves for the four reference orders, one async task per curve.
template <class OrdersOf>
std::vector<CsvFile> hpm_curves(const RunSpec& spec, const std::string& prefix, OrdersOf orders_of) {
    std::vector<std::future<CsvFile>> tasks;
    for (const auto& o : figure_orders) {
        tasks.push_back(std::async(std::launch::async, [&spec, &prefix, orders_of, o] {
            const auto [m, n] = orders_of(o.value);
            const auto sol = hpm_solve(with_orders(spec.params, m, n), spec.hpm_order);
            return CsvFile{prefix + o.label + ".csv", trajectory_csv(hpm_on_grid(sol, spec.t_max, spec.points))};
        }));
    }
    std::vector<CsvFile> out;
    for (auto& t : tasks) {
        out.push_back(t.get());
    }
    return out;
}

// Surface (t, order, value) with value = x or y.
template <class OrdersOf>
CsvFile hpm_surface(const RunSpec& spec, const std::string& name, const char* order_col, bool predator,
                    OrdersOf orders_of) {
    std::vector<std::future<Trajectory>> tasks;
    for (int k = 0; k < surface_order_count; ++k) {
        tasks.push_back(std::async(std::launch::async, [&spec, orders_of, k] {
            const auto [m, n] = orders_of(surface_order(k));
            return hpm_on_grid(hpm_solve(with_orders(spec.params, m, n), spec.hpm_order), spec.t_max, spec.points);
        }));
    }
    std::ostringstream os;
    os << "t," << order_col << ',' << (predator ? "y" : "x") << '\n';
    for (int k = 0; k < surface_order_count; ++k) {
        const Trajectory traj = tasks[k].get();
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            write_csv_row(os, {traj.times[i], surface_order(k),
                               predator ? traj.states[i].y : traj.states[i].x});
        }
    }
    return CsvFile{name, os.str()};
}

// Oracle trajectories for the four reference orders over the diagnostic window.
template <class OrdersOf>
std::vector<Trajectory> oracle_curves(const RunSpec& spec, OrdersOf orders_of) {
    std::vector<std::future<Trajectory>> tasks;
    for (const auto& o : figure_orders) {
        tasks.push_back(std::async(std::launch::async, [&spec, orders_of, o] {
            const auto [m, n] = orders_of(o.value);
            return fabm_solve(with_orders(spec.params, m, n),
                              SolverConfig{spec.oracle_t_max, spec.steps, RhsVariant::truncated_bracket});
        }));
    }
    std::vector<Trajectory> out;
    for (auto& t : tasks) {
        out.push_back(t.get());
    }
    return out;
}

inline std::string verdict(bool ok) { return ok ? "PASS" : "INCONCLUSIVE"; }

inline std::string window_note(const RunSpec& spec) {
    return " [fabm, t in [0, " + format_number(spec.oracle_t_max) + "], steps " + std::to_string(spec.steps) + "]";
}

// Time of the prey maximum for each order; the claim holds when the peak
// is interior and arrives no later for smaller orders.
inline std::string diagnose_peak_timing(const RunSpec& spec) {
    const auto curves = oracle_curves(spec, [](double v) { return std::pair{v, 1.0}; });
    std::ostringstream detail;
    bool ok = true;
    double previous = -1.0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& s = curves[c].states;
        const auto it = std::max_element(s.begin(), s.end(), [](const State& a, const State& b) { return a.x < b.x; });
        const auto idx = static_cast<std::size_t>(it - s.begin());
        const double t_peak = curves[c].times[idx];
        ok = ok && idx > 0 && idx + 1 < s.size() && t_peak >= previous;
        previous = t_peak;
        detail << (c ? ", " : "") << "m=" << figure_orders[c].label << ": t_peak=" << format_number(t_peak);
    }
    return "fig1i prey peak earlier for smaller m: " + verdict(ok) + " (" + detail.str() + ")" + window_note(spec);
}

inline std::string diagnose_peak_height(const RunSpec& spec) {
    const auto curves = oracle_curves(spec, [](double v) { return std::pair{1.0, v}; });
    std::ostringstream detail;
    bool ok = true;
    double previous = -1.0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& s = curves[c].states;
        const double peak =
            std::max_element(s.begin(), s.end(), [](const State& a, const State& b) { return a.x < b.x; })->x;
        ok = ok && peak > previous;
        previous = peak;
        detail << (c ? ", " : "") << "n=" << figure_orders[c].label << ": max x=" << format_number(peak);
    }
    return "fig1ii prey maximum increases with n: " + verdict(ok) + " (" + detail.str() + ")" + window_note(spec);
}

// Predator gain y(t) - y(0) at the first node at or after t = 0.1; largest
// for the smallest n when growth is fastest there.
inline std::string diagnose_initial_predator_growth(const RunSpec& spec) {
    const auto curves = oracle_curves(spec, [](double v) { return std::pair{1.0, v}; });
    std::ostringstream detail;
    bool ok = true;
    double previous = 0.0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& tr = curves[c];
        const auto it = std::lower_bound(tr.times.begin(), tr.times.end(), std::min(0.1, spec.oracle_t_max));
        const auto idx = std::min(static_cast<std::size_t>(it - tr.times.begin()), tr.times.size() - 1);
        const double gain = tr.states[idx].y - tr.states[0].y;
        ok = ok && (c == 0 || gain < previous);
        previous = gain;
        detail << (c ? ", " : "") << "n=" << figure_orders[c].label << ": dy(" << format_number(tr.times[idx])
               << ")=" << format_number(gain);
    }
    return "fig3i predator grows fastest initially for smallest n: " + verdict(ok) + " (" + detail.str() + ")" +
           window_note(spec);
}

inline std::string diagnose_prey_decline(const RunSpec& spec) {
    const auto curves = oracle_curves(spec, [](double v) { return std::pair{v, v}; });
    std::ostringstream detail;
    bool ok = true;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& s = curves[c].states;
        bool decreasing = true;
        for (std::size_t i = 1; i < s.size(); ++i) {
            decreasing = decreasing && s[i].x <= s[i - 1].x;
        }
        ok = ok && decreasing;
        detail << (c ? ", " : "") << "m=n=" << figure_orders[c].label << ": "
               << (decreasing ? "monotone" : "not monotone");
    }
    return "fig4 prey always decreases: " + verdict(ok) + " (" + detail.str() + ")" + window_note(spec);
}

} // namespace detail

/// CSV data for one figure plus its qualitative diagnostic (if any).
inline FigureBundle figure_bundle(const RunSpec& spec, FigureId id) {
    spec.validate();
    FigureBundle bundle;
    const auto m_varies = [](double v) { return std::pair{v, 1.0}; };
    const auto n_varies = [](double v) { return std::pair{1.0, v}; };
    const auto both_vary = [](double v) { return std::pair{v, v}; };
    switch (id) {
    case FigureId::fig1i:
        bundle.files = detail::hpm_curves(spec, "fig1i_m", m_varies);
        bundle.diagnostics.push_back(detail::diagnose_peak_timing(spec));
        break;
    case FigureId::fig1ii:
        bundle.files = detail::hpm_curves(spec, "fig1ii_n", n_varies);
        bundle.diagnostics.push_back(detail::diagnose_peak_height(spec));
        break;
    case FigureId::fig2i:
        bundle.files.push_back(detail::hpm_surface(spec, "fig2i_surface.csv", "m", false, m_varies));
        break;
    case FigureId::fig2ii:
        bundle.files.push_back(detail::hpm_surface(spec, "fig2ii_surface.csv", "n", false, n_varies));
        break;
    case FigureId::fig3i:
        bundle.files = detail::hpm_curves(spec, "fig3i_n", n_varies);
        bundle.diagnostics.push_back(detail::diagnose_initial_predator_growth(spec));
        break;
    case FigureId::fig3ii:
        bundle.files.push_back(detail::hpm_surface(spec, "fig3ii_surface.csv", "n", true, n_varies));
        break;
    case FigureId::fig4:
        bundle.files = detail::hpm_curves(spec, "fig4_mn", both_vary);
        bundle.diagnostics.push_back(detail::diagnose_prey_decline(spec));
        break;
    }
    return bundle;
}

} // namespace rmfrac
