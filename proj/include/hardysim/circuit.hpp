#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hardysim/elements.hpp"
#include "hardysim/fock.hpp"
#include "hardysim/measurement.hpp"

namespace hardysim {

// Circuits are data: the optical schemes are encoded as step lists that the
// engine executes deterministically, so the same description drives the
// library, the CLI and the tests.

struct AddFockStep {
    std::vector<std::string> labels;
    std::vector<int> occupations;
    std::vector<int> cutoffs;
};

struct AddCoherentStep {
    std::string label;
    Complex alpha;
    int cutoff = -1;  // -1: pick by the Poisson tail rule at run time
};

struct BeamSplitterStep {
    std::string port_a;
    std::string port_b;
    double t = 1.0;
};

struct PhaseStep {
    std::string port;
    double theta = 0.0;
};

struct MirrorStep {
    std::string port;
};

struct ConditionStep {
    std::string port;
    int count = 0;
};

struct DropFactorizedStep {
    std::string port;
    double tol = 1e-8;
};

using CircuitStep = std::variant<AddFockStep, AddCoherentStep, BeamSplitterStep, PhaseStep,
                                 MirrorStep, ConditionStep, DropFactorizedStep>;

struct Circuit {
    std::string name;
    std::vector<CircuitStep> steps;
};

struct Diagnostic {
    std::size_t step = 0;
    std::string message;
};

// Structural checks: labels declared before use, modes not reused after
// conditioning, parameters in range.  Empty result means well-formed.
// `initial_labels` lists modes present before the first step.
std::vector<Diagnostic> validate(const Circuit& c,
                                 const std::vector<std::string>& initial_labels = {});

struct RunOptions {
    double tail_threshold = 1e-12;  // coherent cutoff rule
    double prune_eps = 0.0;         // amplitude pruning, off by default
    int cutoff_override = -1;       // absolute coherent cutoff; -1: rule
    int cutoff_extra = 0;           // added to rule-derived cutoffs
};

struct RunResult {
    PureState final_state;
    ExecutionTrace trace;
    double total_norm_deficit = 0.0;  // intended weight lost to truncation/pruning
    double discarded_weight = 0.0;    // weight in non-selected outcomes
    double branch_weight = 1.0;       // weight of the followed branch;
                                      // branch + discarded + deficit == 1
};

// Executes the steps in order.  Deterministic: identical inputs produce
// bit-identical amplitude tables.  Errors carry the step index.
RunResult run(const Circuit& c, const RunOptions& options = {},
              const PureState* initial = nullptr);

// Human-readable serialization (key/value lines inside a step block) and its
// inverse.  parse_circuit throws ArgumentError on malformed text.
std::string to_text(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace hardysim
