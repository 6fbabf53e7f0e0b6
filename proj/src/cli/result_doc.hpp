#pragma once

#include <string>
#include <vector>

#include "hardysim/hardy.hpp"

namespace hardysim::cli {

// Probabilities are rendered with 17 significant decimal digits so every
// double round-trips exactly; JSON and CSV writers share the renderer.
std::string render_double(double v);

struct RunConfig {
    SchemeParams params;
    std::string format = "json";  // json | csv
    std::string out_path;         // empty: stdout
    int experiment = 4;           // experiment & sample subcommands
    std::string axis;             // sweep: phi | alpha | cutoff
    std::vector<double> values;   // sweep values (cutoff axis: deltas)
    int phi_grid = 0;             // sweep phi: uniform grid size, overrides values
    long long shots = 0;          // sample
    unsigned long long seed = 0;  // sample
    bool seed_set = false;
};

// Entries below this probability are folded into the reported residual to
// keep documents reviewable; the library-side tables stay exact.
inline constexpr double kOutputFloor = 1e-18;

std::string params_json(const SchemeParams& p);

std::string distribution_json(const OutcomeDistribution& dist);
std::string trace_json(const ExecutionTrace& trace);

// Full Hardy document: params echo, the four tables, witness, verdict, trace,
// truncation summary.
std::string hardy_document_json(const SchemeParams& p, const HardyStatistics& stats);
std::string hardy_document_csv(const SchemeParams& p, const HardyStatistics& stats);

std::string experiment_document_json(const SchemeParams& p, int n, const ExperimentResult& er);
std::string experiment_document_csv(const SchemeParams& p, int n, const ExperimentResult& er);

struct SweepSummary {
    double max_abs_deviation_vs_first = 0.0;  // over all four experiment tables
    double max_tv_exp4_vs_first = 0.0;
};

std::string sweep_document_json(const SchemeParams& base, const std::string& axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& point_docs,
                                const SweepSummary& summary);
std::string sweep_summary_csv(const std::string& axis, const std::vector<double>& values,
                              const SweepSummary& summary);

struct SampleRow {
    std::vector<int> counts;
    long long hits = 0;
    double frequency = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

std::string sample_document_json(const SchemeParams& p, int n, long long shots,
                                 unsigned long long seed,
                                 const std::vector<std::string>& mode_labels,
                                 const std::vector<SampleRow>& rows);
std::string sample_document_csv(const SchemeParams& p, int n, long long shots,
                                unsigned long long seed,
                                const std::vector<std::string>& mode_labels,
                                const std::vector<SampleRow>& rows);

}  // namespace hardysim::cli
