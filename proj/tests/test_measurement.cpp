#include <doctest.h>

#include <cmath>

#include "hardysim/elements.hpp"
#include "hardysim/measurement.hpp"
#include "test_helpers.hpp"

using namespace hardysim;
using test_helpers::StateGen;

namespace {

// The three-term source state (1/sqrt(3))[|00> + e^{i phi}(|01> + i|10>)]
// over (u1, u2).
PureState source_state(double phi) {
    const double q = 1.0 / std::sqrt(3.0);
    const Complex e = std::polar(q, phi);
    return PureState::from_amplitudes(
        {"u1", "u2"}, {1, 1},
        {{{0, 0}, Complex{q, 0.0}}, {{0, 1}, e}, {{1, 0}, Complex{0.0, 1.0} * e}});
}

}  // namespace

TEST_CASE("count_distribution on the source state") {
    const PureState s = source_state(0.0);
    const OutcomeDistribution d = count_distribution(s, "u2");
    CHECK(d.probability({0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(d.probability({1}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    const OutcomeDistribution v = count_distribution(vacuum({"a"}, {2}), "a");
    CHECK(v.probability({0}) == doctest::Approx(1.0));

    const OutcomeDistribution c = count_distribution(coherent_state(Complex{1.0, 0.0}, 12), 0);
    double fact = 1.0;
    for (int n = 0; n <= 12; ++n) {
        if (n > 0) fact *= n;
        CHECK(std::abs(c.probability({n}) - std::exp(-1.0) / fact) < 1e-10);
    }
}

TEST_CASE("conditioning on Bob seeing vacuum reproduces the conditional state") {
    const double phi = 0.6;
    const PureState s = source_state(phi);
    const auto [p, remaining] = condition_on_count(s, "u2", 0);
    CHECK(p == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    // Equal-magnitude |0> and |1> with relative phase i e^{i phi}.
    const Complex a0 = remaining.amplitude(std::vector<int>{0});
    const Complex a1 = remaining.amplitude(std::vector<int>{1});
    CHECK(std::abs(a0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(a1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(a1 / a0 - Complex{0.0, 1.0} * std::polar(1.0, phi)) < 1e-12);
    CHECK(remaining.mode_count() == 1);
    CHECK(remaining.label(0) == "u1");
}

TEST_CASE("conditioning edge cases") {
    const PureState v = vacuum({"a"}, {2});
    const auto [p, rem] = condition_on_count(v, "a", 0);
    CHECK(p == doctest::Approx(1.0));
    CHECK(rem.mode_count() == 0);
    CHECK_THROWS_AS(condition_on_count(v, "a", 1), ImpossibleOutcomeError);
}

TEST_CASE("joint_count_distribution on the source state") {
    const PureState s = source_state(0.3);
    const OutcomeDistribution d = joint_count_distribution(s, {"u1", "u2"});
    CHECK(d.probability({0, 0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(d.probability({0, 1}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(d.probability({1, 0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(d.probability({1, 1}) == 0.0);

    const PureState vv = tensor(vacuum({"a"}, {1}), vacuum({"b"}, {1}));
    CHECK(joint_count_distribution(vv, {"a", "b"}).probability({0, 0}) == doctest::Approx(1.0));

    CHECK_THROWS_AS(joint_count_distribution(s, std::vector<std::string>{"u1", "u1"}),
                    ArgumentError);
}

TEST_CASE("drop_factorized_mode") {
    const PureState product = tensor(coherent_state(Complex{0.9, 0.1}, 8, "a"),
                                     coherent_state(Complex{-0.4, 0.6}, 8, "b"));
    PureState factor;
    const PureState rest = drop_factorized_mode(product, "a", 1e-10, &factor);
    CHECK(rest.mode_count() == 1);
    CHECK(rest.label(0) == "b");
    CHECK(fidelity(rest, normalize(coherent_state(Complex{-0.4, 0.6}, 8, "b"))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(factor, normalize(coherent_state(Complex{0.9, 0.1}, 8, "a"))) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const PureState bell = PureState::from_amplitudes(
        {"a", "b"}, {1, 1}, {{{0, 0}, Complex{1.0, 0.0}}, {{1, 1}, Complex{1.0, 0.0}}});
    CHECK_THROWS_AS(drop_factorized_mode(bell, "a", 1e-6), EntangledModeError);
}

TEST_CASE("conditioning chain rule matches the joint distribution") {
    StateGen gen(1234);
    for (int trial = 0; trial < 15; ++trial) {
        const PureState s = gen.random_state(3, 2);
        const OutcomeDistribution joint = joint_count_distribution(s, {"m0", "m1"});
        for (const auto& [counts, p] : joint.entries) {
            if (p < 1e-12) continue;
            const auto first = condition_on_count(s, "m0", counts[0]);
            const auto second = condition_on_count(first.remaining, "m1", counts[1]);
            CHECK(first.probability * second.probability == doctest::Approx(p).epsilon(1e-12));
        }
    }
}

TEST_CASE("condition probabilities sum to one minus residual") {
    const PureState c = coherent_state(Complex{1.3, -0.4}, 9);
    const OutcomeDistribution d = count_distribution(c, 0);
    CHECK(d.total() + d.residual == doctest::Approx(1.0).epsilon(1e-10));
    double acc = 0.0;
    for (int n = 0; n <= 9; ++n) acc += condition_on_count(c, 0, n).probability;
    CHECK(acc == doctest::Approx(1.0 - d.residual).epsilon(1e-10));
}

TEST_CASE("count distributions ignore phase shifts") {
    StateGen gen(555);
    const PureState s = gen.random_state(2, 4);
    const PureState shifted = apply_phase(s, {1.23, "m0"});
    const OutcomeDistribution before = joint_count_distribution(s, {"m0", "m1"});
    const OutcomeDistribution after = joint_count_distribution(shifted, {"m0", "m1"});
    CHECK(max_probability_deviation(before, after) < 1e-13);
}

TEST_CASE("conditioning commutes across disjoint modes") {
    StateGen gen(77);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState s = gen.random_state(3, 2);
        const OutcomeDistribution joint = joint_count_distribution(s, {"m0", "m2"});
        // Find an outcome with decent weight to condition on.
        std::vector<int> target;
        for (const auto& [counts, p] : joint.entries)
            if (p > 0.05) {
                target = counts;
                break;
            }
        if (target.empty()) continue;
        const auto ab = condition_on_count(s, "m0", target[0]);
        const auto ab2 = condition_on_count(ab.remaining, "m2", target[1]);
        const auto ba = condition_on_count(s, "m2", target[1]);
        const auto ba2 = condition_on_count(ba.remaining, "m0", target[0]);
        CHECK(ab.probability * ab2.probability ==
              doctest::Approx(ba.probability * ba2.probability).epsilon(1e-12));
        CHECK(fidelity(ab2.remaining, ba2.remaining) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("total_variation_distance basics") {
    OutcomeDistribution a, b;
    a.entries[{0}] = 0.5;
    a.entries[{1}] = 0.5;
    b.entries[{0}] = 1.0;
    CHECK(total_variation_distance(a, a) == 0.0);
    CHECK(total_variation_distance(a, b) == doctest::Approx(0.5));
}
