#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "hardysim/fock.hpp"

namespace hardysim {

struct CountOutcome {
    int mode = 0;
    int count = 0;
};

// Probability table over photon-count tuples of the listed modes.  Keys are
// count vectors in mode_labels order; std::map keeps them lexicographically
// sorted.  `residual` is the probability weight outside the enumerated
// outcomes (truncation losses), so the entries plus residual account for 1.
struct OutcomeDistribution {
    std::vector<std::string> mode_labels;
    std::map<std::vector<int>, double> entries;
    double residual = 0.0;

    double probability(const std::vector<int>& counts) const {
        const auto it = entries.find(counts);
        return it == entries.end() ? 0.0 : it->second;
    }
    double total() const;
};

// Half the L1 distance between two distributions over the union of their
// outcome tuples.
double total_variation_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

// Largest |p_a - p_b| over the union of outcome tuples.
double max_probability_deviation(const OutcomeDistribution& a, const OutcomeDistribution& b);

struct TraceStep {
    std::string description;
    double probability = 1.0;
};

// Ordered record of conditioning (and mode-drop) events; cumulative is the
// product of the step probabilities.
struct ExecutionTrace {
    std::vector<TraceStep> steps;
    double cumulative = 1.0;

    void record(std::string description, double probability) {
        steps.push_back({std::move(description), probability});
        cumulative *= probability;
    }
};

// Photon-count distribution of one mode.  Probabilities are weights divided
// by the state's intended weight, so they sum to 1 - residual.
OutcomeDistribution count_distribution(const PureState& s, int mode);
OutcomeDistribution count_distribution(const PureState& s, const std::string& mode);

struct ConditionResult {
    double probability = 0.0;
    PureState remaining;
};

// Projects onto `mode` having exactly n photons; the measured mode is removed
// from the returned state, which is renormalized.
ConditionResult condition_on_count(const PureState& s, int mode, int n);
ConditionResult condition_on_count(const PureState& s, const std::string& mode, int n);

// Joint count distribution over the listed modes, marginalizing the rest.
OutcomeDistribution joint_count_distribution(const PureState& s, std::span<const int> modes);
OutcomeDistribution joint_count_distribution(const PureState& s,
                                             const std::vector<std::string>& modes);

struct SplitResult {
    PureState factor;  // the single dropped mode
    PureState rest;    // everything else, renormalized
};

// Separates one mode that factors out of the state.  Throws
// EntangledModeError if bipartition_purity(s, {mode}) < 1 - tol; that check
// is the guarantee that no hidden entanglement is being discarded.
SplitResult split_factorized(const PureState& s, int mode, double tol);

PureState drop_factorized_mode(const PureState& s, int mode, double tol,
                               PureState* dropped_factor = nullptr);
PureState drop_factorized_mode(const PureState& s, const std::string& mode, double tol,
                               PureState* dropped_factor = nullptr);

// Compact rendering of a small state, e.g. "0.93|0> + (0+0.37i)|1> + ...".
std::string brief_state_string(const PureState& s, std::size_t max_terms = 4);

}  // namespace hardysim
