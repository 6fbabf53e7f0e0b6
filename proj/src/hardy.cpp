#include "hardysim/hardy.hpp"

#include <cmath>
#include <numbers>

namespace hardysim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;
constexpr double kFactorizationTol = 1e-9;

// Scissors network of the state-truncation scheme.  Mode A carries the
// coherent input and ends at detector A, ref the reflected reference beam,
// B the single photon headed for detector B; the spare output of the 50:50
// splitter becomes the truncated mode (out_label).  Port orientation is
// locked by tests: with these assignments the post-selected output is
// proportional to |0> + sqrt(2) e^{i phi}|1> with no extra phase.
void append_scissors(Circuit& c, const SchemeParams& params, const std::string& out_label) {
    c.steps.emplace_back(AddCoherentStep{"A", params.alpha(), -1});
    c.steps.emplace_back(AddFockStep{{"ref"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{"A", "ref", std::sqrt(2.0) / params.alpha_mag});
    c.steps.emplace_back(AddFockStep{{"B", out_label}, {1, 0}, {1, 0}});
    c.steps.emplace_back(BeamSplitterStep{"B", out_label, kInvSqrt2});
    c.steps.emplace_back(BeamSplitterStep{"A", "B", kInvSqrt2});
    c.steps.emplace_back(ConditionStep{"A", 1});
    c.steps.emplace_back(ConditionStep{"B", 0});
}

// Reference chain: BS1 reflects coherent(-e^{i phi}) towards Alice, the
// mirrored through-beam feeds BS2 whose reflection, after a pi shift, is
// Bob's coherent(i e^{i phi}); the through-beam of BS2 is the leftover
// reference (still carried by `ref_label`).
void append_chain(Circuit& c, const SchemeParams& params, const std::string& ref_label) {
    const double a2 = params.alpha_mag * params.alpha_mag;
    c.steps.emplace_back(AddFockStep{{"LO_A"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{ref_label, "LO_A", std::sqrt((a2 - 3.0) / (a2 - 2.0))});
    c.steps.emplace_back(MirrorStep{ref_label});
    c.steps.emplace_back(AddFockStep{{"LO_B"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{ref_label, "LO_B", std::sqrt((a2 - 4.0) / (a2 - 3.0))});
    c.steps.emplace_back(PhaseStep{"LO_B", std::numbers::pi});
}

// Hardy source: vacuum in port_a, partlycle in port_b.
void append_source(Circuit& c, const std::string& u1_label, const std::string& u2_label) {
    c.steps.emplace_back(AddFockStep{{u1_label}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{u1_label, u2_label, kInvSqrt2});
}

PureState ideal_partlycle(const SchemeParams& params, const std::string& label) {
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const Complex one_amp = std::sqrt(2.0) * std::polar(inv_sqrt3, params.phi);
    return PureState::from_amplitudes({label}, {1},
                                      {{{0}, Complex{inv_sqrt3, 0.0}}, {{1}, one_amp}});
}

int ideal_lo_cutoff(const SchemeParams& params) {
    if (params.cutoff_override > 0) return params.cutoff_override;
    return coherent_cutoff(1.0, params.tail_threshold) + params.cutoff_extra;
}

struct PipelineSetup {
    Circuit circuit;
    std::optional<PureState> initial;
};

// The common trunk of every experiment: source plus local oscillators, up to
// (but not including) the homodyne splitters.  In full mode the leftover
// reference mode is dropped unless keep_remainder is set.
PipelineSetup pipeline_setup(const SchemeParams& params, bool keep_remainder) {
    PipelineSetup setup;
    if (params.mode == SimMode::full) {
        setup.circuit.name = "hardy-full";
        append_scissors(setup.circuit, params, "u2");
        append_source(setup.circuit, "u1", "u2");
        append_chain(setup.circuit, params, "ref");
        if (!keep_remainder)
            setup.circuit.steps.emplace_back(DropFactorizedStep{"ref", kFactorizationTol});
    } else {
        setup.circuit.name = "hardy-ideal";
        const int lo_cutoff = ideal_lo_cutoff(params);
        PureState init = tensor(ideal_partlycle(params, "u2"),
                                coherent_state(-std::polar(1.0, params.phi), lo_cutoff, "LO_A"));
        init = tensor(init, coherent_state(Complex{0.0, 1.0} * std::polar(1.0, params.phi),
                                           lo_cutoff, "LO_B"));
        setup.initial = std::move(init);
        append_source(setup.circuit, "u1", "u2");
    }
    return setup;
}

void append_homodyne_alice(Circuit& c) {
    c.steps.emplace_back(BeamSplitterStep{"LO_A", "u1", kInvSqrt2});
}

void append_homodyne_bob(Circuit& c) {
    c.steps.emplace_back(BeamSplitterStep{"LO_B", "u2", kInvSqrt2});
}

}  // namespace

ExperimentResult run_experiment_detailed(int n, const SchemeParams& params) {
    params.validate();
    if (n < 1 || n > 4) throw ArgumentError("experiment number must be 1..4");

    PipelineSetup setup = pipeline_setup(params, /*keep_remainder=*/false);
    std::vector<std::string> measured;
    std::vector<std::string> detectors;
    switch (n) {
        case 1:
            measured = {"u1", "u2"};
            detectors = {"u1", "u2"};
            break;
        case 2:
            setup.circuit.steps.emplace_back(DropFactorizedStep{"LO_B", kFactorizationTol});
            append_homodyne_alice(setup.circuit);
            measured = {"LO_A", "u1", "u2"};
            detectors = {"c1", "d1", "u2"};
            break;
        case 3:
            setup.circuit.steps.emplace_back(DropFactorizedStep{"LO_A", kFactorizationTol});
            append_homodyne_bob(setup.circuit);
            measured = {"u1", "LO_B", "u2"};
            detectors = {"u1", "c2", "d2"};
            break;
        case 4:
            append_homodyne_alice(setup.circuit);
            append_homodyne_bob(setup.circuit);
            measured = {"LO_A", "u1", "LO_B", "u2"};
            detectors = {"c1", "d1", "c2", "d2"};
            break;
    }

    ExperimentResult out;
    RunResult result = run(setup.circuit, params.run_options(),
                           setup.initial ? &*setup.initial : nullptr);
    out.distribution = joint_count_distribution(result.final_state, measured);
    out.distribution.mode_labels = detectors;
    out.trace = std::move(result.trace);
    out.total_norm_deficit = result.total_norm_deficit;
    return out;
}

namespace {

double coarse_event(const OutcomeDistribution& dist,
                    const std::vector<std::optional<int>>& exact,
                    const std::vector<bool>& at_least_one) {
    double p = 0.0;
    for (const auto& [counts, prob] : dist.entries) {
        bool match = true;
        for (std::size_t i = 0; i < counts.size() && match; ++i) {
            if (exact[i].has_value() && counts[i] != *exact[i]) match = false;
            if (at_least_one[i] && counts[i] < 1) match = false;
        }
        if (match) p += prob;
    }
    return p;
}

}  // namespace

Complex SchemeParams::alpha() const { return std::polar(alpha_mag, phi); }

RunOptions SchemeParams::run_options() const {
    return {tail_threshold, prune_eps, cutoff_override, cutoff_extra};
}

void SchemeParams::validate() const {
    if (!std::isfinite(alpha_mag) || !(alpha_mag > 2.0))
        throw ArgumentError("alpha magnitude must exceed 2 (the reference chain needs "
                            "|alpha|^2 - 4 > 0)");
    if (alpha_mag > 6.0)
        throw ArgumentError("alpha magnitude above 6 exceeds the supported cutoff range");
    if (!std::isfinite(phi)) throw ArgumentError("phi must be finite");
    if (!(tail_threshold > 0.0 && tail_threshold <= 0.1))
        throw ArgumentError("tail threshold must be in (0, 0.1]");
    if (!(prune_eps >= 0.0 && prune_eps <= 0.1))
        throw ArgumentError("prune epsilon must be in [0, 0.1]");
    if (cutoff_override != -1 && (cutoff_override < 1 || cutoff_override > 120))
        throw ArgumentError("cutoff override must be -1 (auto) or in [1, 120]");
    if (cutoff_extra < 0 || cutoff_extra > 50)
        throw ArgumentError("cutoff extra must be in [0, 50]");
    if (!(tol > 0.0)) throw ArgumentError("tol must be positive");
}

ScissorsResult build_scissors(const SchemeParams& params) {
    params.validate();
    if (params.mode != SimMode::full)
        throw ArgumentError("build_scissors requires full mode");

    Circuit c;
    c.name = "scissors";
    append_scissors(c, params, "out");
    RunResult result = run(c, params.run_options());

    ScissorsResult out;
    out.trace = result.trace;
    out.total_norm_deficit = result.total_norm_deficit;
    out.success_prob = result.trace.cumulative;
    SplitResult split = split_factorized(result.final_state,
                                         result.final_state.require_mode("ref"),
                                         kFactorizationTol);
    out.reference = std::move(split.factor);
    out.out = std::move(split.rest);
    return out;
}

ReferenceChainResult build_reference_chain(const PureState& reference,
                                           const SchemeParams& params) {
    params.validate();
    if (params.mode != SimMode::full)
        throw ArgumentError("build_reference_chain requires full mode");
    if (reference.mode_count() != 1)
        throw ArgumentError("build_reference_chain expects a single-mode reference");

    Circuit c;
    c.name = "reference-chain";
    append_chain(c, params, reference.label(0));
    RunResult result = run(c, params.run_options(), &reference);

    ReferenceChainResult out;
    SplitResult s1 = split_factorized(result.final_state,
                                      result.final_state.require_mode("LO_A"),
                                      kFactorizationTol);
    out.lo_alice = std::move(s1.factor);
    SplitResult s2 =
        split_factorized(s1.rest, s1.rest.require_mode("LO_B"), kFactorizationTol);
    out.lo_bob = std::move(s2.factor);
    out.remainder = std::move(s2.rest);
    return out;
}

PureState hardy_source(const PureState& partlycle) {
    if (partlycle.mode_count() != 1)
        throw ArgumentError("hardy_source expects a single-mode state");
    for (const auto& [key, amp] : partlycle.amplitudes())
        if (occ_at(key, 0) > 1)
            throw ArgumentError("hardy_source input must have support on {0, 1} photons");

    PureState in = partlycle;
    in.relabel_mode(0, "hardy-source-in");
    Circuit c;
    c.name = "hardy-source";
    append_source(c, "hardy-source-u1", "hardy-source-in");
    RunResult result = run(c, RunOptions{}, &in);

    // Mode order after the run is (partlycle, u1); present as (u1, u2).
    const std::vector<int> perm{result.final_state.require_mode("hardy-source-u1"),
                                result.final_state.require_mode("hardy-source-in")};
    PureState out = permute_modes(result.final_state, perm);
    out.relabel_mode(0, "u1");
    out.relabel_mode(1, "u2");
    return out;
}

RunResult pre_detection(const SchemeParams& params) {
    params.validate();
    PipelineSetup setup = pipeline_setup(params, /*keep_remainder=*/true);
    return run(setup.circuit, params.run_options(), setup.initial ? &*setup.initial : nullptr);
}

OutcomeDistribution run_experiment(int n, const SchemeParams& params) {
    return run_experiment_detailed(n, params).distribution;
}

HardyStatistics hardy_witness(const SchemeParams& params) {
    HardyStatistics stats;
    for (int n = 1; n <= 4; ++n) {
        ExperimentResult er = run_experiment_detailed(n, params);
        stats.experiments[n - 1] = std::move(er.distribution);
        if (n == 4) {
            stats.trace = std::move(er.trace);
            stats.total_norm_deficit = er.total_norm_deficit;
        }
    }
    HardyWitness& w = stats.witness;
    w.p_joint_nn = coarse_event(stats.experiments[0], {std::nullopt, std::nullopt}, {true, true});
    w.p_zero_hn = coarse_event(stats.experiments[1], {0, 1, 0}, {false, false, false});
    w.p_zero_nh = coarse_event(stats.experiments[2], {0, 0, 1}, {false, false, false});
    w.p4 = coarse_event(stats.experiments[3], {0, 1, 0, 1}, {false, false, false, false});
    w.contradiction = w.p_joint_nn < params.tol && w.p_zero_hn < params.tol &&
                      w.p_zero_nh < params.tol && w.p4 > 10.0 * params.tol;
    return stats;
}

double compare_ideal_vs_full(const SchemeParams& params) {
    params.validate();
    SchemeParams ideal = params;
    ideal.mode = SimMode::ideal;
    SchemeParams full = params;
    full.mode = SimMode::full;
    double dev = 0.0;
    for (int n = 1; n <= 4; ++n)
        dev = std::max(dev, max_probability_deviation(run_experiment(n, ideal),
                                                      run_experiment(n, full)));
    return dev;
}

double phase_sweep(const SchemeParams& params, std::span<const double> phis) {
    if (phis.size() < 2) throw ArgumentError("phase_sweep needs at least two phases");
    SchemeParams p = params;
    p.phi = phis[0];
    const OutcomeDistribution base = run_experiment(4, p);
    double max_tv = 0.0;
    for (std::size_t i = 1; i < phis.size(); ++i) {
        p.phi = phis[i];
        max_tv = std::max(max_tv, total_variation_distance(base, run_experiment(4, p)));
    }
    return max_tv;
}

OutcomeDistribution phase_average(const SchemeParams& params, int grid_size) {
    if (grid_size < 1) throw ArgumentError("phase_average needs grid_size >= 1");
    OutcomeDistribution avg;
    const double inv = 1.0 / grid_size;
    for (int k = 0; k < grid_size; ++k) {
        SchemeParams p = params;
        p.phi = 2.0 * std::numbers::pi * k / grid_size;
        OutcomeDistribution d = run_experiment(4, p);
        if (k == 0) avg.mode_labels = d.mode_labels;
        for (const auto& [counts, prob] : d.entries) avg.entries[counts] += prob * inv;
        avg.residual += d.residual * inv;
    }
    return avg;
}

LHVEnumeration lhv_enumerate(const std::set<HardyZero>& zeros_enforced) {
    LHVEnumeration out;
    out.max_p4 = 0.0;
    for (int bits = 0; bits < 16; ++bits) {
        const LHVStrategy s{(bits & 8) != 0, (bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
        if (zeros_enforced.count(HardyZero::NN) && s.a_num_one_plus && s.b_num_one_plus) continue;
        if (zeros_enforced.count(HardyZero::HN) && s.a_hom_d && !s.b_num_one_plus) continue;
        if (zeros_enforced.count(HardyZero::NH) && !s.a_num_one_plus && s.b_hom_d) continue;
        if (s.a_hom_d && s.b_hom_d) out.max_p4 = 1.0;
        out.surviving.push_back(s);
    }
    return out;
}

}  // namespace hardysim
