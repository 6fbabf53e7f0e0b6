#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "hardysim/version.hpp"

namespace {

using hardysim::SimMode;
using hardysim::cli::RunConfig;

void add_common_options(CLI::App* app, RunConfig& config, std::string& mode) {
    app->add_option("--alpha", config.params.alpha_mag, "source beam magnitude |alpha|");
    app->add_option("--phi", config.params.phi, "coherent phase (radians)");
    app->add_option("--mode", mode, "ideal | full")->check(CLI::IsMember({"ideal", "full"}));
    app->add_option("--cutoff", config.params.cutoff_override,
                    "absolute coherent-mode cutoff (default: Poisson tail rule)");
    app->add_option("--prune-eps", config.params.prune_eps,
                    "drop amplitudes below this magnitude after each element");
    app->add_option("--tol", config.params.tol, "witness zero threshold");
    app->add_option("--format", config.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", config.out_path, "output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(hardysim::kToolName) +
                 " - single-particle Hardy nonlocality simulator"};
    app.set_version_flag("--version", hardysim::kToolVersion);
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "full";
    int experiment_number = 4;
    std::string axis;

    CLI::App* hardy = app.add_subcommand("hardy", "run all four experiments and the witness");
    add_common_options(hardy, config, mode);

    CLI::App* experiment = app.add_subcommand("experiment", "run one experiment's outcome table");
    experiment->add_option("n", experiment_number, "experiment number (1-4)")->required();
    add_common_options(experiment, config, mode);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one axis and report deviations");
    sweep->add_option("axis", axis, "phi | alpha | cutoff")->required();
    sweep->add_option("--values", config.values, "sweep values (cutoff axis: integer deltas)");
    sweep->add_option("--grid", config.phi_grid, "uniform phi grid size (phi axis)");
    add_common_options(sweep, config, mode);

    CLI::App* sample = app.add_subcommand("sample", "draw finite shots from an experiment");
    sample->add_option("n", experiment_number, "experiment number (1-4)")->required();
    auto* shots_opt = sample->add_option("--shots", config.shots, "number of shots");
    auto* seed_opt = sample->add_option("--seed", config.seed, "generator seed");
    add_common_options(sample, config, mode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return hardysim::cli::kExitConfigError;
    }

    config.params.mode = (mode == "ideal") ? SimMode::ideal : SimMode::full;
    if (sample->parsed()) {
        if (shots_opt->count() == 0) config.shots = 0;
        config.seed_set = seed_opt->count() > 0;
    }

    if (hardy->parsed()) return hardysim::cli::cmd_hardy(config, std::cout, std::cerr);
    if (experiment->parsed())
        return hardysim::cli::cmd_experiment(config, experiment_number, std::cout, std::cerr);
    if (sweep->parsed()) return hardysim::cli::cmd_sweep(config, axis, std::cout, std::cerr);
    if (sample->parsed())
        return hardysim::cli::cmd_sample(config, experiment_number, std::cout, std::cerr);
    return hardysim::cli::kExitConfigError;
}
