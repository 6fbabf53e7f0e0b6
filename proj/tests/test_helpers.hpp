#pragma once

#include <complex>
#include <random>
#include <vector>

#include "hardysim/fock.hpp"

namespace test_helpers {

using hardysim::Complex;
using hardysim::PureState;

// Deterministic pseudo-random states for the property tests.
class StateGen {
public:
    explicit StateGen(unsigned seed) : rng_(seed) {}

    PureState random_state(int modes, int cutoff, const std::string& prefix = "m") {
        std::vector<std::string> labels;
        std::vector<int> cutoffs(modes, cutoff);
        for (int i = 0; i < modes; ++i) labels.push_back(prefix + std::to_string(i));
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        std::uniform_int_distribution<int> occ(0, cutoff);
        std::vector<std::pair<std::vector<int>, Complex>> terms;
        const int n_terms = 3 + static_cast<int>(rng_() % 5);
        for (int t = 0; t < n_terms; ++t) {
            std::vector<int> o(modes);
            for (int m = 0; m < modes; ++m) o[m] = occ(rng_);
            terms.emplace_back(std::move(o), Complex{amp(rng_), amp(rng_)});
        }
        PureState s = PureState::from_amplitudes(std::move(labels), std::move(cutoffs), terms);
        if (s.amplitudes().empty()) return random_state(modes, cutoff, prefix);
        return s;
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

inline double max_amplitude_difference(const PureState& a, const PureState& b) {
    double dev = 0.0;
    for (const auto& [key, amp] : a.amplitudes())
        dev = std::max(dev, std::abs(amp - b.amplitude(key)));
    for (const auto& [key, amp] : b.amplitudes())
        dev = std::max(dev, std::abs(amp - a.amplitude(key)));
    return dev;
}

}  // namespace test_helpers
