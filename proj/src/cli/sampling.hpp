#pragma once

#include <vector>

#include "cli/result_doc.hpp"
#include "hardysim/measurement.hpp"

namespace hardysim::cli {

// Draws `shots` outcomes from the distribution with a seeded std::mt19937_64.
// Each draw maps a raw 64-bit word to a uniform double in [0, 1) via
// (word >> 11) * 2^-53 and inverts the cumulative table (outcomes in
// lexicographic order, normalized by the table total), so results are
// reproducible across platforms.  Rows carry Wilson 95% intervals.
std::vector<SampleRow> sample_distribution(const OutcomeDistribution& dist, long long shots,
                                           unsigned long long seed);

}  // namespace hardysim::cli
