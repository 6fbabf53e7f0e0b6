#pragma once

#include <array>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "hardysim/circuit.hpp"

namespace hardysim {

// "ideal" prepares the exact partlycle (|0> + sqrt(2) e^{i phi}|1>)/sqrt(3)
// and exact unit-amplitude local oscillators directly; "full" builds
// everything from the scissors network and the reference chain.
enum class SimMode { ideal, full };

struct SchemeParams {
    double alpha_mag = 3.0;  // |alpha| of the source beam; must exceed 2
    double phi = 0.0;        // coherent phase of the ensemble member
    SimMode mode = SimMode::full;
    double tail_threshold = 1e-12;  // coherent cutoff rule
    double prune_eps = 0.0;
    int cutoff_override = -1;  // absolute coherent cutoff; -1: tail rule
    int cutoff_extra = 0;      // added on top of the tail rule
    double tol = 1e-8;         // witness zero threshold

    Complex alpha() const;
    RunOptions run_options() const;
    void validate() const;  // throws ArgumentError
};

// Quantum scissors (three-beam-splitter truncation network), post-selected on
// one photon at detector A and none at B.  `out` is the truncated
// |0> + sqrt(2) e^{i phi}|1> mode, `reference` the coherent
// i sqrt(|alpha|^2 - 2) e^{i phi} beam that later feeds the local
// oscillators.  The two outputs must factorize at purity >= 1 - 1e-9.
struct ScissorsResult {
    double success_prob = 0.0;
    PureState out;
    PureState reference;
    ExecutionTrace trace;
    double total_norm_deficit = 0.0;
};
ScissorsResult build_scissors(const SchemeParams& params);

// Splits the reference beam into Alice's local oscillator coherent(-e^{i phi}),
// Bob's coherent(i e^{i phi}) (after the pi shift), and the leftover
// coherent(-sqrt(|alpha|^2-4) e^{i phi}).  All three outputs factorize.
struct ReferenceChainResult {
    PureState lo_alice;
    PureState lo_bob;
    PureState remainder;
};
ReferenceChainResult build_reference_chain(const PureState& reference,
                                           const SchemeParams& params);

// 50:50 beam splitter with the partlycle entering port_b and vacuum port_a,
// so the reflection phase i lands on the u1 one-photon term; outputs are
// labeled u1, u2 in that order.
PureState hardy_source(const PureState& partlycle);

// The joint state just before Alice and Bob's homodyne beam splitters, with
// every mode still present (modes u1, u2, LO_A, LO_B and, in full mode, the
// leftover reference carried by "ref").
RunResult pre_detection(const SchemeParams& params);

// Experiment 1: count u1, u2 directly.  Experiment 2: Alice mixes u1 with her
// local oscillator and counts (c1, d1); Bob counts u2.  Experiment 3: the
// mirror image.  Experiment 4: both mix and count (c1, d1, c2, d2).  At the
// homodyne splitter the local oscillator enters port_a and the signal port_b;
// the port_a output is the c detector and the port_b output the d detector.
// In full mode all distributions are conditional on scissors success.
OutcomeDistribution run_experiment(int n, const SchemeParams& params);

// Same run, keeping the post-selection trace and the truncation ledger.
struct ExperimentResult {
    OutcomeDistribution distribution;
    ExecutionTrace trace;
    double total_norm_deficit = 0.0;
};
ExperimentResult run_experiment_detailed(int n, const SchemeParams& params);

struct HardyWitness {
    double p_joint_nn = 0.0;  // Exp 1: both paths show a photon
    double p_zero_hn = 0.0;   // Exp 2: Alice D event while Bob sees vacuum
    double p_zero_nh = 0.0;   // Exp 3: Bob D event while Alice sees vacuum
    double p4 = 0.0;          // Exp 4: both D events
    bool contradiction = false;
};

struct HardyStatistics {
    std::array<OutcomeDistribution, 4> experiments;
    HardyWitness witness;
    ExecutionTrace trace;  // post-selection record of the experiment-4 run
    double total_norm_deficit = 0.0;
};

// Runs all four experiments; the contradiction flag is set when the three
// zero events stay below tol while p4 exceeds 10 tol.
HardyStatistics hardy_witness(const SchemeParams& params);

// Largest probability difference across all four experiments between the
// ideal and full pipelines at these parameters.
double compare_ideal_vs_full(const SchemeParams& params);

// Largest total-variation distance between the experiment-4 distribution at
// each listed phase and the one at phis[0].
double phase_sweep(const SchemeParams& params, std::span<const double> phis);

// Uniform average of experiment-4 distributions over phi = 2 pi k/grid_size.
OutcomeDistribution phase_average(const SchemeParams& params, int grid_size);

// Deterministic local-hidden-variable strategy: one outcome per party per
// setting.  "D" is the coarse event (one photon at the d detector, none at
// the c detector); the number setting is coarse-grained to {0, >=1}.
struct LHVStrategy {
    bool a_num_one_plus = false;
    bool a_hom_d = false;
    bool b_num_one_plus = false;
    bool b_hom_d = false;
};

enum class HardyZero { NN, HN, NH };

struct LHVEnumeration {
    double max_p4 = 0.0;
    std::vector<LHVStrategy> surviving;
};

// Enumerates all 16 deterministic strategies, discards those violating an
// enforced zero, and reports the best achievable joint-D probability (convex
// mixtures cannot beat the deterministic maximum).
LHVEnumeration lhv_enumerate(const std::set<HardyZero>& zeros_enforced);

}  // namespace hardysim
