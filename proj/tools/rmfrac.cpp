// Command-line front end: series dumps, trajectories, figure data and the
// validation report.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rmfrac/commands.hpp"

int main(int argc, char** argv) {
    using namespace rmfrac;

    CLI::App app{"Fractional Rosenzweig-MacArthur predator-prey solver (HPM series + numerical oracles)"};
    app.set_config("--config", "", "File of 'key = value' lines setting any flag; flags on the command line win");
    app.require_subcommand(1);
    app.fallthrough();

    RunSpec spec;
    auto& p = spec.params;
    std::string method = "hpm";
    std::string rhs = "truncated";

    app.add_option("--r", p.r, "Prey intrinsic growth rate")->capture_default_str();
    app.add_option("--K", p.K, "Carrying capacity")->capture_default_str();
    app.add_option("--a", p.a, "Half-saturation constant")->capture_default_str();
    app.add_option("--alpha", p.alpha, "Maximum predation rate")->capture_default_str();
    app.add_option("--beta", p.beta, "Predator growth rate")->capture_default_str();
    app.add_option("--d", p.d, "Predator death rate")->capture_default_str();
    app.add_option("--x0", p.delta, "Initial prey density")->capture_default_str();
    app.add_option("--y0", p.gamma0, "Initial predator density")->capture_default_str();
    app.add_option("--m", p.m, "Fractional order of the prey equation, in (0, 1]")->capture_default_str();
    app.add_option("--n", p.n, "Fractional order of the predator equation, in (0, 1]")->capture_default_str();
    app.add_option("--order", spec.hpm_order, "HPM order N (0..10)")->capture_default_str();
    app.add_option("--bracket-order", p.bracket_order, "Terms kept in the expansion of 1/(a + x)")
        ->capture_default_str();
    app.add_option("--t-max", spec.t_max, "End of the output time grid")->capture_default_str();
    app.add_option("--oracle-t-max", spec.oracle_t_max, "Window for oracle diagnostics and the validity scan")
        ->capture_default_str();
    app.add_option("--points", spec.points, "Output grid points")->capture_default_str();
    app.add_option("--steps", spec.steps, "Time steps for fabm/rk4")->capture_default_str();
    app.add_option("--method", method, "Trajectory method")
        ->check(CLI::IsMember({"hpm", "fabm", "rk4"}))
        ->capture_default_str();
    app.add_option("--rhs", rhs, "Holling term used by fabm/rk4")
        ->check(CLI::IsMember({"truncated", "exact"}))
        ->capture_default_str();
    app.add_option("--out", spec.out, "Output file (series, trajectory, validate) or directory (figures)");

    auto* series = app.add_subcommand("series", "Dump the HPM terms x_k, y_k");
    auto* trajectory = app.add_subcommand("trajectory", "Write a t,x,y CSV for one method");
    auto* figures = app.add_subcommand("figures", "Write figure CSV bundles and diagnostics");
    figures->add_option("--figure", spec.figure, "1i, 1ii, 2i, 2ii, 3i, 3ii, 4 or all")->capture_default_str();
    auto* validate = app.add_subcommand("validate", "Run the validation checks and write a report");
    validate->add_option("--corrupt-gamma", spec.gamma_corruption)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        spec.method = parse_method(method);
        spec.rhs_variant = rhs == "exact" ? RhsVariant::exact_rational : RhsVariant::truncated_bracket;
        if (series->parsed()) {
            return cmd_series(spec);
        }
        if (trajectory->parsed()) {
            return cmd_trajectory(spec);
        }
        if (figures->parsed()) {
            return cmd_figures(spec);
        }
        if (validate->parsed()) {
            return cmd_validate(spec);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
