#include "cli/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace hardysim::cli {

namespace {

constexpr double kZ95 = 1.959963984540054;

void wilson_interval(double phat, long long n, double& low, double& high) {
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    low = std::max(0.0, center - half);
    high = std::min(1.0, center + half);
}

}  // namespace

std::vector<SampleRow> sample_distribution(const OutcomeDistribution& dist, long long shots,
                                           unsigned long long seed) {
    if (shots < 1) throw ArgumentError("sampling requires shots >= 1");
    if (dist.entries.empty()) throw ArgumentError("sampling requires a non-empty distribution");

    std::vector<const std::vector<int>*> outcomes;
    std::vector<double> cdf;
    outcomes.reserve(dist.entries.size());
    cdf.reserve(dist.entries.size());
    double acc = 0.0;
    for (const auto& [counts, p] : dist.entries) {
        acc += p;
        outcomes.push_back(&counts);
        cdf.push_back(acc);
    }
    const double total = acc;

    std::mt19937_64 gen(seed);
    std::map<std::vector<int>, long long> hits;
    for (long long s = 0; s < shots; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double target = u * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        const std::size_t idx =
            it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        ++hits[*outcomes[idx]];
    }

    std::vector<SampleRow> rows;
    rows.reserve(hits.size());
    for (const auto& [counts, k] : hits) {
        SampleRow row;
        row.counts = counts;
        row.hits = k;
        row.frequency = static_cast<double>(k) / shots;
        wilson_interval(row.frequency, shots, row.wilson_low, row.wilson_high);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hardysim::cli
