#include "commands.hpp"
#include "config.hpp"

#include "gasp/error.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace {

using gasp::cli::RunConfig;

// Flags shared by every subcommand. Unset flags leave the config-file value alone.
struct CommonFlags {
    std::optional<double> alpha, radius, grading, tol;
    std::optional<int> n_theta, n_phi, n_r, threads;
    std::optional<std::uint64_t> seed;
    std::string config_file;
    std::string out;

    void attach(CLI::App* app)
    {
        app->add_option("--alpha", alpha, "weight exponent, 0 < alpha < 1/2");
        app->add_option("--radius", radius, "hemisphere radius");
        app->add_option("--ntheta", n_theta, "polar panels");
        app->add_option("--nphi", n_phi, "azimuthal panels");
        app->add_option("--nr", n_r, "radial rings of the base disk (default ntheta)");
        app->add_option("--grading", grading, "rim grading exponent");
        app->add_option("--tol", tol, "pass/fail tolerance");
        app->add_option("--seed", seed, "probe seed");
        app->add_option("--threads", threads, "OpenMP threads (0: default)");
        app->add_option("--config", config_file, "key=value config file");
        app->add_option("--out", out, "output CSV (default stdout)");
    }

    RunConfig resolve() const
    {
        RunConfig cfg;
        if (!config_file.empty()) {
            gasp::cli::apply_config_file(config_file, cfg);
        }
        auto set = [](auto& field, const auto& flag) {
            if (flag) {
                field = *flag;
            }
        };
        set(cfg.alpha, alpha);
        set(cfg.radius, radius);
        set(cfg.grading, grading);
        set(cfg.tol, tol);
        set(cfg.n_theta, n_theta);
        set(cfg.n_phi, n_phi);
        set(cfg.n_r, n_r);
        set(cfg.threads, threads);
        set(cfg.seed, seed);
        if (!out.empty()) {
            cfg.output_path = out;
        }
        return cfg;
    }
};

int run(const CommonFlags& flags, const std::function<int(const RunConfig&, std::ostream&)>& command)
{
    const RunConfig cfg = flags.resolve();
    cfg.validate();
    if (cfg.threads > 0) {
        omp_set_num_threads(cfg.threads);
    }
    if (cfg.output_path.empty()) {
        return command(cfg, std::cout);
    }
    std::ofstream file(cfg.output_path);
    if (!file) {
        throw gasp::ParameterError("cannot write " + cfg.output_path);
    }
    const int status = command(cfg, file);
    file.flush();
    if (!file) {
        throw gasp::ParameterError("write to " + cfg.output_path + " failed");
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fundamental solutions and Green's functions of the Holmgren operator"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string x_text, xi_text;
    gasp::cli::SolveInputs solve_in;
    std::vector<std::string> cases;
    std::function<int(const RunConfig&, std::ostream&)> command;

    auto* kernel = app.add_subcommand("kernel-eval", "q1, q2 and the gradient at one pair of points");
    flags.attach(kernel);
    kernel->add_option("--x", x_text, "x1,...,xm")->required();
    kernel->add_option("--xi", xi_text, "xi1,...,xim")->required();
    kernel->callback([&] {
        command = [&](const RunConfig& cfg, std::ostream& out) {
            return gasp::cli::kernel_eval(cfg, gasp::cli::parse_point(x_text), gasp::cli::parse_point(xi_text), out);
        };
    });

    auto* gauge = app.add_subcommand("gauge", "double layer of the unit density at interior, exterior, base and rim probes");
    flags.attach(gauge);
    gauge->callback([&] { command = gasp::cli::gauge; });

    auto* flux = app.add_subcommand("flux", "weighted flux of grad q1 through the closed surface");
    flags.attach(flux);
    flux->callback([&] { command = gasp::cli::flux; });

    auto* solve = app.add_subcommand("solve", "Holmgren problem on the hemisphere by both Green's function paths");
    flags.attach(solve);
    solve->add_option("--case", solve_in.case_name, "manufactured solution supplying the data");
    solve->add_option("--phi-file", solve_in.phi_file, "theta,phi_angle,value at the surface nodes");
    solve->add_option("--nu-file", solve_in.nu_file, "r,phi_angle,value at the base nodes");
    solve->add_option("--targets", solve_in.targets_file, "x1,x2,x3 evaluation points");
    solve->add_option("--write-data", solve_in.write_data, "write PREFIX_gamma.csv and PREFIX_base.csv");
    solve->callback([&] {
        command = [&](const RunConfig& cfg, std::ostream& out) { return gasp::cli::solve(cfg, solve_in, out); };
    });

    auto* green = app.add_subcommand("green-check", "regular part of the Green's function against the image formula");
    flags.attach(green);
    green->callback([&] { command = gasp::cli::green_check; });

    auto* conv = app.add_subcommand("convergence", "manufactured-solution errors on ntheta/4, ntheta/2, ntheta");
    flags.attach(conv);
    conv->add_option("--case", cases, "case name (repeatable)");
    conv->callback([&] {
        command = [&](const RunConfig& cfg, std::ostream& out) { return gasp::cli::convergence(cfg, cases, out); };
    });

    auto* energy = app.add_subcommand("energy-check", "both sides of the weighted energy identity");
    flags.attach(energy);
    energy->add_option("--case", cases, "case name (repeatable)");
    energy->callback([&] {
        command = [&](const RunConfig& cfg, std::ostream& out) { return gasp::cli::energy_check(cfg, cases, out); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run(flags, command);
    } catch (const gasp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
