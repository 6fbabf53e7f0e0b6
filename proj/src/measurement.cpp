#include "hardysim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace hardysim {

double OutcomeDistribution::total() const {
    double acc = 0.0;
    for (const auto& [counts, p] : entries) acc += p;
    return acc;
}

double total_variation_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double l1 = 0.0;
    for (const auto& [counts, p] : a.entries) l1 += std::abs(p - b.probability(counts));
    for (const auto& [counts, p] : b.entries)
        if (!a.entries.count(counts)) l1 += std::abs(p);
    return 0.5 * l1;
}

double max_probability_deviation(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double dev = 0.0;
    for (const auto& [counts, p] : a.entries) dev = std::max(dev, std::abs(p - b.probability(counts)));
    for (const auto& [counts, p] : b.entries)
        if (!a.entries.count(counts)) dev = std::max(dev, std::abs(p));
    return dev;
}

OutcomeDistribution count_distribution(const PureState& s, int mode) {
    std::vector<int> modes{mode};
    return joint_count_distribution(s, modes);
}

OutcomeDistribution count_distribution(const PureState& s, const std::string& mode) {
    return count_distribution(s, s.require_mode(mode));
}

OutcomeDistribution joint_count_distribution(const PureState& s, std::span<const int> modes) {
    if (modes.empty()) throw ArgumentError("joint_count_distribution: no modes given");
    std::set<int> seen;
    for (int m : modes) {
        if (m < 0 || m >= s.mode_count())
            throw ArgumentError("joint_count_distribution: mode index out of range");
        if (!seen.insert(m).second)
            throw ArgumentError("joint_count_distribution: duplicate mode");
    }
    const double weight = s.intended_weight();
    if (!(weight > 1e-300)) throw DegenerateStateError("joint_count_distribution: degenerate state");

    OutcomeDistribution dist;
    for (int m : modes) dist.mode_labels.push_back(s.label(m));
    for (const auto& [key, amp] : s.amplitudes()) {
        std::vector<int> counts;
        counts.reserve(modes.size());
        for (int m : modes) counts.push_back(occ_at(key, m));
        dist.entries[std::move(counts)] += std::norm(amp) / weight;
    }
    dist.residual = s.norm_deficit() / weight;
    return dist;
}

OutcomeDistribution joint_count_distribution(const PureState& s,
                                             const std::vector<std::string>& modes) {
    std::vector<int> idx;
    idx.reserve(modes.size());
    for (const auto& l : modes) idx.push_back(s.require_mode(l));
    return joint_count_distribution(s, idx);
}

ConditionResult condition_on_count(const PureState& s, int mode, int n) {
    if (mode < 0 || mode >= s.mode_count())
        throw ArgumentError("condition_on_count: mode index out of range");
    if (n < 0) throw ArgumentError("condition_on_count: count must be >= 0");
    const double weight = s.intended_weight();
    if (!(weight > 1e-300)) throw DegenerateStateError("condition_on_count: degenerate state");

    double kept = 0.0;
    for (const auto& [key, amp] : s.amplitudes())
        if (occ_at(key, mode) == n) kept += std::norm(amp);
    const double probability = kept / weight;
    if (probability < 1e-300)
        throw ImpossibleOutcomeError("conditioning on " + s.label(mode) + " == " +
                                     std::to_string(n) + " has zero probability");

    std::vector<std::string> labels;
    std::vector<int> cutoffs;
    for (int i = 0; i < s.mode_count(); ++i) {
        if (i == mode) continue;
        labels.push_back(s.label(i));
        cutoffs.push_back(s.cutoff(i));
    }
    PureState remaining(std::move(labels), std::move(cutoffs));
    const double inv = 1.0 / std::sqrt(kept);
    for (const auto& [key, amp] : s.amplitudes())
        if (occ_at(key, mode) == n) remaining.set_amplitude(occ_erase(key, mode), amp * inv);
    return {probability, std::move(remaining)};
}

ConditionResult condition_on_count(const PureState& s, const std::string& mode, int n) {
    return condition_on_count(s, s.require_mode(mode), n);
}

SplitResult split_factorized(const PureState& s, int mode, double tol) {
    if (mode < 0 || mode >= s.mode_count())
        throw ArgumentError("split_factorized: mode index out of range");
    if (s.mode_count() < 2) throw ArgumentError("split_factorized: need at least two modes");
    std::vector<int> subset{mode};
    const double purity = bipartition_purity(s, subset);
    if (purity < 1.0 - tol)
        throw EntangledModeError("mode " + s.label(mode) + " is entangled with the rest (purity " +
                                 std::to_string(purity) + ")");

    // Slice through the heaviest term: along the pivot the joint amplitudes
    // are proportional to each factor.
    OccKey pivot = 0;
    double best = -1.0;
    for (const auto& [key, amp] : s.amplitudes()) {
        const double w = std::norm(amp);
        if (w > best) {
            best = w;
            pivot = key;
        }
    }
    if (best <= 0.0) throw DegenerateStateError("split_factorized: degenerate state");

    PureState factor({s.label(mode)}, {s.cutoff(mode)});
    const OccKey rest_pivot = occ_with(pivot, mode, 0);
    for (const auto& [key, amp] : s.amplitudes())
        if (occ_with(key, mode, 0) == rest_pivot) factor.set_amplitude(OccKey(occ_at(key, mode)), amp);

    std::vector<std::string> labels;
    std::vector<int> cutoffs;
    for (int i = 0; i < s.mode_count(); ++i) {
        if (i == mode) continue;
        labels.push_back(s.label(i));
        cutoffs.push_back(s.cutoff(i));
    }
    PureState rest(std::move(labels), std::move(cutoffs));
    const int pivot_count = occ_at(pivot, mode);
    for (const auto& [key, amp] : s.amplitudes())
        if (occ_at(key, mode) == pivot_count) rest.set_amplitude(occ_erase(key, mode), amp);

    return {normalize(factor), normalize(rest)};
}

PureState drop_factorized_mode(const PureState& s, int mode, double tol,
                               PureState* dropped_factor) {
    SplitResult split = split_factorized(s, mode, tol);
    if (dropped_factor) *dropped_factor = std::move(split.factor);
    return std::move(split.rest);
}

PureState drop_factorized_mode(const PureState& s, const std::string& mode, double tol,
                               PureState* dropped_factor) {
    return drop_factorized_mode(s, s.require_mode(mode), tol, dropped_factor);
}

std::string brief_state_string(const PureState& s, std::size_t max_terms) {
    std::vector<OccKey> keys = s.sorted_keys();
    std::stable_sort(keys.begin(), keys.end(), [&s](OccKey a, OccKey b) {
        return std::norm(s.amplitude(a)) > std::norm(s.amplitude(b));
    });
    std::ostringstream os;
    std::size_t shown = 0;
    for (OccKey key : keys) {
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        if (shown) os << " + ";
        const Complex amp = s.amplitude(key);
        char buf[64];
        if (std::abs(amp.imag()) < 1e-15) {
            std::snprintf(buf, sizeof buf, "%.6g", amp.real());
            os << buf;
        } else {
            std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", amp.real(), amp.imag());
            os << buf;
        }
        os << "|";
        for (int i = 0; i < s.mode_count(); ++i) {
            if (i) os << ",";
            os << occ_at(key, i);
        }
        os << ">";
        ++shown;
    }
    return os.str();
}

}  // namespace hardysim
