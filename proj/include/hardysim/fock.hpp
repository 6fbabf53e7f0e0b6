#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hardysim/errors.hpp"

namespace hardysim {

using Complex = std::complex<double>;

// Occupation vectors are packed one mode per byte into a 64-bit key, so a
// state can hold at most kMaxModes modes and 255 photons per mode.  The
// factorial tables used by the optical elements cap total occupations at
// kMaxOccupation.
inline constexpr int kMaxModes = 8;
inline constexpr int kMaxOccupation = 170;

using OccKey = std::uint64_t;

inline int occ_at(OccKey key, int mode) {
    return static_cast<int>((key >> (8 * mode)) & 0xffu);
}

inline OccKey occ_with(OccKey key, int mode, int n) {
    const int shift = 8 * mode;
    return (key & ~(OccKey{0xff} << shift)) | (OccKey(n) << shift);
}

// Removes the byte of `mode`, shifting higher modes down by one slot.
inline OccKey occ_erase(OccKey key, int mode) {
    const int shift = 8 * mode;
    const OccKey low = key & ((OccKey{1} << shift) - 1);
    const OccKey high = (shift + 8 < 64) ? (key >> (shift + 8)) << shift : 0;
    return low | high;
}

OccKey pack_occupations(std::span<const int> occupations);
std::vector<int> unpack_occupations(OccKey key, int mode_count);

struct ModeId {
    int id = 0;
    std::string label;
};

// Sparse multimode Fock-basis pure state.  Amplitudes are kept in canonical
// form: no entry with magnitude exactly zero, every occupation within the
// per-mode cutoff.  norm_deficit records weight lost to coherent-state
// truncation or amplitude pruning; it is bookkeeping only and never rescales
// the stored amplitudes.
class PureState {
public:
    using AmpTable = std::unordered_map<OccKey, Complex>;

    // Scalar state: zero modes, single amplitude 1 (the tensor identity).
    PureState();

    static PureState from_amplitudes(std::vector<std::string> labels,
                                     std::vector<int> cutoffs,
                                     const std::vector<std::pair<std::vector<int>, Complex>>& terms);

    int mode_count() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int mode) const { return labels_.at(mode); }
    const std::vector<std::string>& labels() const { return labels_; }
    int cutoff(int mode) const { return cutoffs_.at(mode); }
    const std::vector<int>& cutoffs() const { return cutoffs_; }

    // Index of the mode with this label, or -1.
    int find_mode(const std::string& label) const;
    // Same, but throws ArgumentError when absent.
    int require_mode(const std::string& label) const;

    const AmpTable& amplitudes() const { return amps_; }
    Complex amplitude(std::span<const int> occupations) const;
    Complex amplitude(OccKey key) const;

    double squared_norm() const;
    double norm_deficit() const { return norm_deficit_; }
    // Weight the state was meant to carry before truncation losses.
    double intended_weight() const { return squared_norm() + norm_deficit_; }

    // Occupation keys sorted lexicographically by (mode 0, mode 1, ...).
    std::vector<OccKey> sorted_keys() const;

    // Mutators used by state builders; they keep the canonical form.
    void set_amplitude(OccKey key, Complex value);
    void add_amplitude(OccKey key, Complex value);
    void set_norm_deficit(double d) { norm_deficit_ = d; }
    void relabel_mode(int mode, std::string label);

    friend PureState tensor(const PureState&, const PureState&);
    friend PureState permute_modes(const PureState&, std::span<const int> perm);

    // Internal: construct an empty table with given layout.
    PureState(std::vector<std::string> labels, std::vector<int> cutoffs);
    void set_cutoff(int mode, int cutoff) { cutoffs_.at(mode) = cutoff; }

private:
    void check_key(OccKey key) const;

    std::vector<std::string> labels_;
    std::vector<int> cutoffs_;
    AmpTable amps_;
    double norm_deficit_ = 0.0;
};

// All-zero occupation state on the given modes.
PureState vacuum(const std::vector<std::string>& labels, const std::vector<int>& cutoffs);

// Single Fock basis state |n0, n1, ...>.  Default labels are m0, m1, ...
PureState fock_state(const std::vector<int>& occupations, const std::vector<int>& cutoffs,
                     std::vector<std::string> labels = {});

// Truncated coherent state with exact Poisson amplitudes
// e^{-|alpha|^2/2} alpha^n / sqrt(n!), n = 0..cutoff.  Not renormalized;
// the tail weight is recorded in norm_deficit.
PureState coherent_state(Complex alpha, int cutoff, std::string label = "c");

// Smallest cutoff N whose Poisson tail weight beyond N is < tail_threshold.
int coherent_cutoff(double alpha_mag, double tail_threshold);

PureState tensor(const PureState& s1, const PureState& s2);

// <s1|s2>; requires identical mode labels in identical order.
Complex inner_product(const PureState& s1, const PureState& s2);

PureState normalize(const PureState& s);

// |<s1|s2>|^2 / (|s1|^2 |s2|^2), in [0, 1].
double fidelity(const PureState& s1, const PureState& s2);

// Tr(rho_subset^2) of the reduced state of `subset` (mode indices), computed
// from the normalized input.  1 means the subset factors out exactly.
double bipartition_purity(const PureState& s, std::span<const int> subset);
double bipartition_purity(const PureState& s, const std::vector<std::string>& subset_labels);

// Drops entries with |amp| < eps; removed weight is added to norm_deficit.
// Returns the removed weight (sum of |amp|^2).
PureState prune(const PureState& s, double eps, double* removed_weight = nullptr);

// Reorders modes: new mode i is old mode perm[i].
PureState permute_modes(const PureState& s, std::span<const int> perm);

}  // namespace hardysim
