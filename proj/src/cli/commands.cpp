#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "cli/sampling.hpp"

namespace hardysim::cli {

namespace {

void validate_common(const RunConfig& config) {
    config.params.validate();
    if (config.format != "json" && config.format != "csv")
        throw ArgumentError("format must be json or csv");
}

// Results are written only after the whole computation succeeded, so error
// exits never leave partial files behind.
void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output path " + path);
    f << content;
    if (!f.good()) throw Error("failed writing output path " + path);
}

// Sweep points go to <stem>.<index><extension> next to the summary file.
std::string point_path(const std::string& base, std::size_t index) {
    const std::size_t dot = base.find_last_of('.');
    const std::size_t slash = base.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + "." + std::to_string(index);
    return base.substr(0, dot) + "." + std::to_string(index) + base.substr(dot);
}

int run_guarded(const RunConfig& config, std::ostream& err, auto&& validate_fn, auto&& body) {
    try {
        validate_common(config);
        validate_fn();
    } catch (const ArgumentError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        return body();
    } catch (const ArgumentError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

}  // namespace

int cmd_hardy(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return run_guarded(
        config, err, [] {},
        [&] {
            const HardyStatistics stats = hardy_witness(config.params);
            const std::string doc = config.format == "json"
                                        ? hardy_document_json(config.params, stats)
                                        : hardy_document_csv(config.params, stats);
            write_output(config.out_path, doc, out);
            return stats.witness.contradiction ? kExitSuccess : kExitVerdictFalse;
        });
}

int cmd_experiment(const RunConfig& config, int n, std::ostream& out, std::ostream& err) {
    return run_guarded(
        config, err,
        [&] {
            if (n < 1 || n > 4) throw ArgumentError("experiment number must be 1..4");
        },
        [&] {
            const ExperimentResult er = run_experiment_detailed(n, config.params);
            const std::string doc = config.format == "json"
                                        ? experiment_document_json(config.params, n, er)
                                        : experiment_document_csv(config.params, n, er);
            write_output(config.out_path, doc, out);
            return kExitSuccess;
        });
}

namespace {

SchemeParams point_params(const RunConfig& config, const std::string& axis, double value) {
    SchemeParams p = config.params;
    if (axis == "phi") {
        p.phi = value;
    } else if (axis == "alpha") {
        p.alpha_mag = value;
    } else {
        p.cutoff_extra = config.params.cutoff_extra + static_cast<int>(value);
    }
    p.validate();
    return p;
}

}  // namespace

int cmd_sweep(const RunConfig& config, const std::string& axis, std::ostream& out,
              std::ostream& err) {
    std::vector<double> values = config.values;
    return run_guarded(
        config, err,
        [&] {
            if (axis != "phi" && axis != "alpha" && axis != "cutoff")
                throw ArgumentError("sweep axis must be phi, alpha or cutoff");
            if (axis == "phi" && config.phi_grid > 0) {
                values.clear();
                for (int k = 0; k < config.phi_grid; ++k)
                    values.push_back(2.0 * std::numbers::pi * k / config.phi_grid);
            }
            if (values.empty()) throw ArgumentError("sweep needs at least one value");
            if (axis == "cutoff") {
                for (double v : values)
                    if (v != std::floor(v) || v < 0.0)
                        throw ArgumentError("cutoff sweep values are non-negative integer "
                                            "deltas on the rule-derived cutoff");
                if (config.params.cutoff_override > 0)
                    throw ArgumentError("cutoff sweep requires the automatic cutoff rule");
            }
            for (double v : values) point_params(config, axis, v);
        },
        [&] {
            std::vector<std::string> docs;
            std::vector<HardyStatistics> stats;
            stats.reserve(values.size());
            for (double v : values) {
                const SchemeParams p = point_params(config, axis, v);
                stats.push_back(hardy_witness(p));
                docs.push_back(config.format == "json" ? hardy_document_json(p, stats.back())
                                                       : hardy_document_csv(p, stats.back()));
            }
            SweepSummary summary;
            for (std::size_t i = 1; i < stats.size(); ++i) {
                for (int e = 0; e < 4; ++e)
                    summary.max_abs_deviation_vs_first = std::max(
                        summary.max_abs_deviation_vs_first,
                        max_probability_deviation(stats[0].experiments[e],
                                                  stats[i].experiments[e]));
                summary.max_tv_exp4_vs_first =
                    std::max(summary.max_tv_exp4_vs_first,
                             total_variation_distance(stats[0].experiments[3],
                                                      stats[i].experiments[3]));
            }
            if (config.out_path.empty()) {
                if (config.format == "json") {
                    write_output("", sweep_document_json(config.params, axis, values, docs, summary),
                                 out);
                } else {
                    for (const auto& d : docs) out << d << "\n";
                    out << sweep_summary_csv(axis, values, summary);
                }
            } else {
                // All points are computed before any file is written.
                for (std::size_t i = 0; i < docs.size(); ++i)
                    write_output(point_path(config.out_path, i), docs[i], out);
                const std::string summary_doc =
                    config.format == "json"
                        ? sweep_document_json(config.params, axis, values, {}, summary)
                        : sweep_summary_csv(axis, values, summary);
                write_output(config.out_path, summary_doc, out);
            }
            return kExitSuccess;
        });
}

int cmd_sample(const RunConfig& config, int n, std::ostream& out, std::ostream& err) {
    return run_guarded(
        config, err,
        [&] {
            if (n < 1 || n > 4) throw ArgumentError("experiment number must be 1..4");
            if (config.shots < 1) throw ArgumentError("sampling requires --shots >= 1");
            if (!config.seed_set) throw ArgumentError("sampling requires --seed");
        },
        [&] {
            const OutcomeDistribution dist = run_experiment(n, config.params);
            const std::vector<SampleRow> rows =
                sample_distribution(dist, config.shots, config.seed);
            const std::string doc =
                config.format == "json"
                    ? sample_document_json(config.params, n, config.shots, config.seed,
                                           dist.mode_labels, rows)
                    : sample_document_csv(config.params, n, config.shots, config.seed,
                                          dist.mode_labels, rows);
            write_output(config.out_path, doc, out);
            return kExitSuccess;
        });
}

}  // namespace hardysim::cli
