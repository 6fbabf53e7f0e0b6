#include "hardysim/elements.hpp"

#include <array>
#include <cmath>

namespace hardysim {

namespace {

struct FactTables {
    std::array<long double, kMaxOccupation + 1> fact;
    std::array<long double, kMaxOccupation + 1> sqrt_fact;
    FactTables() {
        fact[0] = 1.0L;
        sqrt_fact[0] = 1.0L;
        for (int n = 1; n <= kMaxOccupation; ++n) {
            fact[n] = fact[n - 1] * n;
            sqrt_fact[n] = sqrt_fact[n - 1] * std::sqrt(static_cast<long double>(n));
        }
    }
};

const FactTables& tables() {
    static const FactTables t;
    return t;
}

constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PureState apply_beam_splitter(const PureState& s, const BeamSplitterSpec& spec) {
    if (!(spec.t >= 0.0 && spec.t <= 1.0))
        throw ArgumentError("beam splitter transmission must be in [0, 1]");
    const int ia = s.require_mode(spec.port_a);
    const int ib = s.require_mode(spec.port_b);
    if (ia == ib) throw ArgumentError("beam splitter ports must differ");

    const int ca = s.cutoff(ia), cb = s.cutoff(ib);
    const int raised = ca + cb;
    if (raised > kMaxOccupation)
        throw ArgumentError("beam splitter output cutoff exceeds supported occupation");

    const long double t = spec.t;
    const long double r = std::sqrt(std::max(0.0L, 1.0L - t * t));
    std::vector<long double> tp(raised + 1), rp(raised + 1);
    tp[0] = rp[0] = 1.0L;
    for (int i = 1; i <= raised; ++i) {
        tp[i] = tp[i - 1] * t;
        rp[i] = rp[i - 1] * r;
    }
    const auto& tab = tables();

    PureState out(s.labels(), s.cutoffs());
    out.set_cutoff(ia, raised);
    out.set_cutoff(ib, raised);
    out.set_norm_deficit(s.norm_deficit());

    for (const auto& [key, amp] : s.amplitudes()) {
        const int m = occ_at(key, ia);
        const int n = occ_at(key, ib);
        // (t a+ + i r b+)^m (i r a+ + t b+)^n expanded term by term; j photons
        // of the first factor and k of the second end up in port a.
        for (int j = 0; j <= m; ++j) {
            for (int k = 0; k <= n; ++k) {
                const int p = j + k;
                const int q = m + n - p;
                const int refl = m - j + k;
                const long double coef =
                    tab.sqrt_fact[m] * tab.sqrt_fact[n] * tab.sqrt_fact[p] * tab.sqrt_fact[q] /
                    (tab.fact[j] * tab.fact[m - j] * tab.fact[k] * tab.fact[n - k]) *
                    tp[j + n - k] * rp[refl];
                if (coef == 0.0L) continue;
                const Complex contrib = amp * kIPow[refl & 3] * static_cast<double>(coef);
                out.add_amplitude(occ_with(occ_with(key, ia, p), ib, q), contrib);
            }
        }
    }
    return out;
}

PureState apply_phase(const PureState& s, const PhaseShiftSpec& spec) {
    if (!std::isfinite(spec.theta)) throw ArgumentError("phase shift must be finite");
    const int idx = s.require_mode(spec.port);
    PureState out(s.labels(), s.cutoffs());
    out.set_norm_deficit(s.norm_deficit());
    std::vector<Complex> ph(s.cutoff(idx) + 1);
    for (int n = 0; n <= s.cutoff(idx); ++n) ph[n] = std::polar(1.0, spec.theta * n);
    for (const auto& [key, amp] : s.amplitudes())
        out.set_amplitude(key, amp * ph[occ_at(key, idx)]);
    return out;
}

PureState apply_mirror(const PureState& s, const MirrorSpec& spec) {
    const int idx = s.require_mode(spec.port);
    PureState out(s.labels(), s.cutoffs());
    out.set_norm_deficit(s.norm_deficit());
    for (const auto& [key, amp] : s.amplitudes())
        out.set_amplitude(key, amp * kIPow[occ_at(key, idx) & 3]);
    return out;
}

namespace {

// y += G x with G = a+b + a b+ on the occupancy-capped two-mode space.
void apply_generator(int dim, const std::vector<Complex>& x, std::vector<Complex>& y) {
    const auto& tab = tables();
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            const Complex amp = x[m * dim + n];
            if (amp == Complex{0.0, 0.0}) continue;
            if (m + 1 < dim && n > 0) {
                const double c = static_cast<double>(tab.sqrt_fact[m + 1] / tab.sqrt_fact[m] *
                                                     tab.sqrt_fact[n] / tab.sqrt_fact[n - 1]);
                y[(m + 1) * dim + (n - 1)] += c * amp;
            }
            if (n + 1 < dim && m > 0) {
                const double c = static_cast<double>(tab.sqrt_fact[n + 1] / tab.sqrt_fact[n] *
                                                     tab.sqrt_fact[m] / tab.sqrt_fact[m - 1]);
                y[(m - 1) * dim + (n + 1)] += c * amp;
            }
        }
    }
}

}  // namespace

std::vector<Complex> bs_unitary_oracle(int cutoff, double t) {
    if (cutoff < 0 || cutoff > 10)
        throw ArgumentError("bs_unitary_oracle is test-scale only (cutoff <= 10)");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("transmission must be in [0, 1]");
    const int dim = cutoff + 1;
    const std::size_t size = static_cast<std::size_t>(dim) * dim;
    const double theta = std::acos(t);

    // exp(i theta G) by scaling and squaring: halve theta until the Taylor
    // series is well conditioned, then square back up.
    int squarings = 0;
    double th = theta;
    while (std::abs(th) * 2.0 * dim > 0.5) {
        th *= 0.5;
        ++squarings;
    }

    std::vector<Complex> unitary(size * size, Complex{0.0, 0.0});
    std::vector<Complex> term(size), next(size), col(size);
    for (std::size_t j = 0; j < size; ++j) {
        std::fill(col.begin(), col.end(), Complex{0.0, 0.0});
        std::fill(term.begin(), term.end(), Complex{0.0, 0.0});
        term[j] = Complex{1.0, 0.0};
        col[j] = Complex{1.0, 0.0};
        for (int k = 1;; ++k) {
            std::fill(next.begin(), next.end(), Complex{0.0, 0.0});
            apply_generator(dim, term, next);
            const Complex scale = Complex{0.0, th} / static_cast<double>(k);
            double tn = 0.0;
            for (std::size_t i = 0; i < size; ++i) {
                term[i] = next[i] * scale;
                tn += std::norm(term[i]);
            }
            if (std::sqrt(tn) < 1e-16) break;
            for (std::size_t i = 0; i < size; ++i) col[i] += term[i];
        }
        for (std::size_t i = 0; i < size; ++i) unitary[i * size + j] = col[i];
    }

    std::vector<Complex> squared(size * size);
    for (int sq = 0; sq < squarings; ++sq) {
        std::fill(squared.begin(), squared.end(), Complex{0.0, 0.0});
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t k = 0; k < size; ++k) {
                const Complex u = unitary[i * size + k];
                if (u == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < size; ++j)
                    squared[i * size + j] += u * unitary[k * size + j];
            }
        unitary.swap(squared);
    }
    return unitary;
}

}  // namespace hardysim
