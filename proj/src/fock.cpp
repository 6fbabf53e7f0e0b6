#include "hardysim/fock.hpp"

#include <algorithm>
#include <cmath>

namespace hardysim {

OccKey pack_occupations(std::span<const int> occupations) {
    if (occupations.size() > static_cast<std::size_t>(kMaxModes))
        throw ArgumentError("too many modes for packed occupation key");
    OccKey key = 0;
    for (std::size_t i = 0; i < occupations.size(); ++i) {
        const int n = occupations[i];
        if (n < 0 || n > 255) throw ArgumentError("occupation out of range");
        key |= OccKey(n) << (8 * i);
    }
    return key;
}

std::vector<int> unpack_occupations(OccKey key, int mode_count) {
    std::vector<int> occ(mode_count);
    for (int i = 0; i < mode_count; ++i) occ[i] = occ_at(key, i);
    return occ;
}

PureState::PureState() { amps_.emplace(OccKey{0}, Complex{1.0, 0.0}); }

PureState::PureState(std::vector<std::string> labels, std::vector<int> cutoffs)
    : labels_(std::move(labels)), cutoffs_(std::move(cutoffs)) {
    if (labels_.size() != cutoffs_.size())
        throw ArgumentError("labels and cutoffs must have the same length");
    if (labels_.size() > static_cast<std::size_t>(kMaxModes))
        throw ArgumentError("at most " + std::to_string(kMaxModes) + " modes are supported");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (cutoffs_[i] < 0 || cutoffs_[i] > kMaxOccupation)
            throw ArgumentError("cutoff out of range for mode " + labels_[i]);
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw ArgumentError("duplicate mode label " + labels_[i]);
    }
}

PureState PureState::from_amplitudes(std::vector<std::string> labels, std::vector<int> cutoffs,
                                     const std::vector<std::pair<std::vector<int>, Complex>>& terms) {
    PureState s(std::move(labels), std::move(cutoffs));
    for (const auto& [occ, amp] : terms) {
        if (occ.size() != s.labels_.size())
            throw ArgumentError("occupation vector length mismatch");
        s.add_amplitude(pack_occupations(occ), amp);
    }
    return s;
}

int PureState::find_mode(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    return -1;
}

int PureState::require_mode(const std::string& label) const {
    const int idx = find_mode(label);
    if (idx < 0) throw ArgumentError("no mode labeled " + label);
    return idx;
}

Complex PureState::amplitude(std::span<const int> occupations) const {
    if (occupations.size() != labels_.size())
        throw ArgumentError("occupation vector length mismatch");
    return amplitude(pack_occupations(occupations));
}

Complex PureState::amplitude(OccKey key) const {
    const auto it = amps_.find(key);
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double PureState::squared_norm() const {
    double n2 = 0.0;
    for (const auto& [key, amp] : amps_) n2 += std::norm(amp);
    return n2;
}

std::vector<OccKey> PureState::sorted_keys() const {
    std::vector<OccKey> keys;
    keys.reserve(amps_.size());
    for (const auto& [key, amp] : amps_) keys.push_back(key);
    const int k = mode_count();
    std::sort(keys.begin(), keys.end(), [k](OccKey a, OccKey b) {
        for (int i = 0; i < k; ++i) {
            const int na = occ_at(a, i), nb = occ_at(b, i);
            if (na != nb) return na < nb;
        }
        return false;
    });
    return keys;
}

void PureState::check_key(OccKey key) const {
    for (int i = 0; i < mode_count(); ++i)
        if (occ_at(key, i) > cutoffs_[i])
            throw ArgumentError("occupation exceeds cutoff on mode " + labels_[i]);
    if (mode_count() < kMaxModes && (key >> (8 * mode_count())) != 0)
        throw ArgumentError("occupation key has photons in nonexistent modes");
}

void PureState::set_amplitude(OccKey key, Complex value) {
    check_key(key);
    if (value == Complex{0.0, 0.0}) {
        amps_.erase(key);
    } else {
        amps_[key] = value;
    }
}

void PureState::add_amplitude(OccKey key, Complex value) {
    check_key(key);
    auto [it, inserted] = amps_.try_emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (it->second == Complex{0.0, 0.0}) amps_.erase(it);
    } else if (value == Complex{0.0, 0.0}) {
        amps_.erase(it);
    }
}

void PureState::relabel_mode(int mode, std::string label) {
    if (mode < 0 || mode >= mode_count()) throw ArgumentError("mode index out of range");
    for (int i = 0; i < mode_count(); ++i)
        if (i != mode && labels_[i] == label)
            throw ArgumentError("duplicate mode label " + label);
    labels_[mode] = std::move(label);
}

PureState vacuum(const std::vector<std::string>& labels, const std::vector<int>& cutoffs) {
    if (labels.size() != cutoffs.size())
        throw ArgumentError("vacuum: labels and cutoffs must have the same length");
    PureState s(labels, cutoffs);
    s.set_amplitude(OccKey{0}, Complex{1.0, 0.0});
    return s;
}

PureState fock_state(const std::vector<int>& occupations, const std::vector<int>& cutoffs,
                     std::vector<std::string> labels) {
    if (occupations.size() != cutoffs.size())
        throw ArgumentError("fock_state: occupations and cutoffs must have the same length");
    if (labels.empty()) {
        labels.reserve(occupations.size());
        for (std::size_t i = 0; i < occupations.size(); ++i)
            labels.push_back("m" + std::to_string(i));
    }
    PureState s(std::move(labels), cutoffs);
    for (std::size_t i = 0; i < occupations.size(); ++i)
        if (occupations[i] < 0 || occupations[i] > cutoffs[i])
            throw ArgumentError("fock_state: occupation exceeds cutoff");
    s.set_amplitude(pack_occupations(occupations), Complex{1.0, 0.0});
    return s;
}

PureState coherent_state(Complex alpha, int cutoff, std::string label) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw ArgumentError("coherent_state: alpha must be finite");
    if (cutoff < 0) throw ArgumentError("coherent_state: cutoff must be >= 0");
    PureState s({std::move(label)}, {cutoff});
    const double pref = std::exp(-0.5 * std::norm(alpha));
    Complex term{pref, 0.0};  // e^{-|a|^2/2} alpha^n / sqrt(n!)
    double kept = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
        s.set_amplitude(OccKey(n), term);
        kept += std::norm(term);
    }
    s.set_norm_deficit(std::max(0.0, 1.0 - kept));
    return s;
}

int coherent_cutoff(double alpha_mag, double tail_threshold) {
    if (!(alpha_mag >= 0.0) || !std::isfinite(alpha_mag))
        throw ArgumentError("coherent_cutoff: bad magnitude");
    if (!(tail_threshold > 0.0)) throw ArgumentError("coherent_cutoff: bad tail threshold");
    const double lambda = alpha_mag * alpha_mag;
    double term = std::exp(-lambda);
    double acc = term;
    int n = 0;
    while (1.0 - acc >= tail_threshold) {
        ++n;
        if (n > kMaxOccupation)
            throw ArgumentError("coherent_cutoff: amplitude too large for supported cutoffs");
        term *= lambda / n;
        acc += term;
    }
    return n;
}

PureState tensor(const PureState& s1, const PureState& s2) {
    std::vector<std::string> labels = s1.labels_;
    for (const auto& l : s2.labels_)
        if (s1.find_mode(l) >= 0) throw ArgumentError("tensor: duplicate mode label " + l);
    labels.insert(labels.end(), s2.labels_.begin(), s2.labels_.end());
    std::vector<int> cutoffs = s1.cutoffs_;
    cutoffs.insert(cutoffs.end(), s2.cutoffs_.begin(), s2.cutoffs_.end());
    PureState out(std::move(labels), std::move(cutoffs));
    const int shift = 8 * s1.mode_count();
    for (const auto& [k1, a1] : s1.amps_)
        for (const auto& [k2, a2] : s2.amps_)
            out.set_amplitude(k1 | (k2 << shift), a1 * a2);
    const double w1 = s1.intended_weight(), w2 = s2.intended_weight();
    out.set_norm_deficit(std::max(0.0, w1 * w2 - s1.squared_norm() * s2.squared_norm()));
    return out;
}

Complex inner_product(const PureState& s1, const PureState& s2) {
    if (s1.labels() != s2.labels())
        throw ArgumentError("inner_product: mode labels or order differ");
    // Iterate the smaller table.
    const PureState& a = s1.amplitudes().size() <= s2.amplitudes().size() ? s1 : s2;
    const PureState& b = (&a == &s1) ? s2 : s1;
    Complex acc{0.0, 0.0};
    for (const auto& [key, amp] : a.amplitudes()) {
        const Complex other = b.amplitude(key);
        if (other == Complex{0.0, 0.0}) continue;
        acc += (&a == &s1) ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return acc;
}

PureState normalize(const PureState& s) {
    const double n2 = s.squared_norm();
    if (!(n2 > 1e-300)) throw DegenerateStateError("normalize: state norm is numerically zero");
    const double inv = 1.0 / std::sqrt(n2);
    PureState out = s;
    for (const auto& [key, amp] : s.amplitudes()) out.set_amplitude(key, amp * inv);
    return out;
}

double fidelity(const PureState& s1, const PureState& s2) {
    const double n1 = s1.squared_norm(), n2 = s2.squared_norm();
    if (!(n1 > 1e-300) || !(n2 > 1e-300))
        throw DegenerateStateError("fidelity: degenerate state");
    const Complex ov = inner_product(s1, s2);
    return std::norm(ov) / (n1 * n2);
}

double bipartition_purity(const PureState& s, std::span<const int> subset) {
    const int k = s.mode_count();
    std::vector<bool> in_subset(k, false);
    int count = 0;
    for (int idx : subset) {
        if (idx < 0 || idx >= k) throw ArgumentError("bipartition_purity: mode index out of range");
        if (!in_subset[idx]) ++count;
        in_subset[idx] = true;
    }
    if (count == 0 || count == k)
        throw ArgumentError("bipartition_purity: subset must be non-empty and proper");
    const double n2 = s.squared_norm();
    if (!(n2 > 1e-300)) throw DegenerateStateError("bipartition_purity: degenerate state");

    OccKey sub_mask = 0, rest_mask = 0;
    for (int i = 0; i < k; ++i)
        (in_subset[i] ? sub_mask : rest_mask) |= OccKey{0xff} << (8 * i);

    // Group amplitudes by the complement pattern; the reduced density matrix
    // is the sum of outer products of the per-group subset vectors.
    std::unordered_map<OccKey, int> sub_index;
    std::unordered_map<OccKey, std::vector<std::pair<int, Complex>>> groups;
    for (const auto& [key, amp] : s.amplitudes()) {
        const OccKey sk = key & sub_mask;
        const auto [it, inserted] = sub_index.try_emplace(sk, static_cast<int>(sub_index.size()));
        groups[key & rest_mask].emplace_back(it->second, amp);
    }
    const std::size_t dim = sub_index.size();
    std::vector<Complex> rho(dim * dim, Complex{0.0, 0.0});
    for (const auto& [rest, vec] : groups)
        for (const auto& [i, ai] : vec)
            for (const auto& [j, aj] : vec)
                rho[i * dim + j] += ai * std::conj(aj);
    double tr2 = 0.0;
    for (const Complex& x : rho) tr2 += std::norm(x);
    return tr2 / (n2 * n2);
}

double bipartition_purity(const PureState& s, const std::vector<std::string>& subset_labels) {
    std::vector<int> idx;
    idx.reserve(subset_labels.size());
    for (const auto& l : subset_labels) idx.push_back(s.require_mode(l));
    return bipartition_purity(s, idx);
}

PureState prune(const PureState& s, double eps, double* removed_weight) {
    if (eps < 0.0) throw ArgumentError("prune: eps must be >= 0");
    double removed = 0.0;
    PureState out = s;
    if (eps > 0.0) {
        for (const auto& [key, amp] : s.amplitudes()) {
            if (std::abs(amp) < eps) {
                removed += std::norm(amp);
                out.set_amplitude(key, Complex{0.0, 0.0});
            }
        }
        out.set_norm_deficit(s.norm_deficit() + removed);
    }
    if (removed_weight) *removed_weight = removed;
    return out;
}

PureState permute_modes(const PureState& s, std::span<const int> perm) {
    const int k = s.mode_count();
    if (static_cast<int>(perm.size()) != k)
        throw ArgumentError("permute_modes: permutation size mismatch");
    std::vector<bool> seen(k, false);
    std::vector<std::string> labels(k);
    std::vector<int> cutoffs(k);
    for (int i = 0; i < k; ++i) {
        const int src = perm[i];
        if (src < 0 || src >= k || seen[src]) throw ArgumentError("permute_modes: not a permutation");
        seen[src] = true;
        labels[i] = s.labels_[src];
        cutoffs[i] = s.cutoffs_[src];
    }
    PureState out(std::move(labels), std::move(cutoffs));
    for (const auto& [key, amp] : s.amps_) {
        OccKey nk = 0;
        for (int i = 0; i < k; ++i) nk |= OccKey(occ_at(key, perm[i])) << (8 * i);
        out.set_amplitude(nk, amp);
    }
    out.set_norm_deficit(s.norm_deficit());
    return out;
}

}  // namespace hardysim
