#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardysim/circuit.hpp"
#include "test_helpers.hpp"

using namespace hardysim;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

Circuit source_circuit() {
    Circuit c;
    c.name = "source";
    c.steps.emplace_back(AddFockStep{{"u1"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{"u1", "u2", kInvSqrt2});
    return c;
}

PureState partlycle(double phi) {
    const double q = 1.0 / std::sqrt(3.0);
    return PureState::from_amplitudes(
        {"u2"}, {1},
        {{{0}, Complex{q, 0.0}}, {{1}, std::sqrt(2.0) * std::polar(q, phi)}});
}

}  // namespace

TEST_CASE("validate accepts a well-formed circuit") {
    CHECK(validate(source_circuit(), {"u2"}).empty());
}

TEST_CASE("validate flags undeclared labels") {
    Circuit c;
    c.steps.emplace_back(AddFockStep{{"a"}, {0}, {1}});
    c.steps.emplace_back(BeamSplitterStep{"a", "ghost", 0.5});
    const auto diags = validate(c);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].step == 1);
    CHECK(diags[0].message.find("undeclared") != std::string::npos);
}

TEST_CASE("validate flags a doubly consumed mode") {
    Circuit c;
    c.steps.emplace_back(AddFockStep{{"a"}, {0}, {1}});
    c.steps.emplace_back(ConditionStep{"a", 0});
    c.steps.emplace_back(ConditionStep{"a", 0});
    const auto diags = validate(c);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].step == 2);
    CHECK(diags[0].message.find("already consumed") != std::string::npos);
}

TEST_CASE("running the source circuit reproduces the three-term state") {
    const double phi = std::numbers::pi / 3.0;
    const PureState init = partlycle(phi);
    const RunResult result = run(source_circuit(), {}, &init);
    const PureState& s = result.final_state;
    const double q = 1.0 / std::sqrt(3.0);
    // Mode order: u2 (initial), then u1.
    CHECK(std::abs(s.amplitude(std::vector<int>{0, 0}) - Complex{q, 0.0}) < 1e-12);
    CHECK(std::abs(s.amplitude(std::vector<int>{1, 0}) - std::polar(q, phi)) < 1e-12);
    CHECK(std::abs(s.amplitude(std::vector<int>{0, 1}) -
                   Complex{0.0, 1.0} * std::polar(q, phi)) < 1e-12);
    CHECK(result.trace.steps.empty());
    CHECK(result.trace.cumulative == 1.0);
}

TEST_CASE("empty circuit returns the scalar state") {
    const RunResult result = run(Circuit{"empty", {}});
    CHECK(result.final_state.mode_count() == 0);
    CHECK(result.final_state.amplitude(OccKey{0}) == Complex{1.0, 0.0});
    CHECK(result.trace.cumulative == 1.0);
}

TEST_CASE("run is deterministic") {
    Circuit c;
    c.name = "det";
    c.steps.emplace_back(AddCoherentStep{"x", Complex{1.2, 0.4}, -1});
    c.steps.emplace_back(AddFockStep{{"y"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{"x", "y", 0.6});
    c.steps.emplace_back(ConditionStep{"y", 0});
    const RunResult r1 = run(c);
    const RunResult r2 = run(c);
    const auto keys1 = r1.final_state.sorted_keys();
    const auto keys2 = r2.final_state.sorted_keys();
    REQUIRE(keys1 == keys2);
    for (OccKey k : keys1)
        CHECK(r1.final_state.amplitude(k) == r2.final_state.amplitude(k));  // bit-identical
    CHECK(r1.trace.cumulative == r2.trace.cumulative);
}

TEST_CASE("weight ledger accounts for one") {
    Circuit c;
    c.name = "ledger";
    c.steps.emplace_back(AddCoherentStep{"x", Complex{1.5, 0.0}, -1});
    c.steps.emplace_back(AddCoherentStep{"y", Complex{0.0, 0.8}, -1});
    c.steps.emplace_back(BeamSplitterStep{"x", "y", 0.71});
    c.steps.emplace_back(ConditionStep{"y", 1});
    const RunResult r = run(c);
    CHECK(r.branch_weight + r.discarded_weight + r.total_norm_deficit ==
          doctest::Approx(1.0).epsilon(1e-8));
    // The followed branch carries the product of conditioning probabilities.
    CHECK(r.branch_weight ==
          doctest::Approx(r.trace.cumulative * (1.0 - r.total_norm_deficit)).epsilon(1e-10));
    CHECK(r.final_state.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("commuting steps can be reordered") {
    Circuit c1, c2;
    c1.name = c2.name = "reorder";
    const AddFockStep add{{"a", "b", "c"}, {1, 0, 1}, {1, 1, 1}};
    c1.steps.emplace_back(add);
    c1.steps.emplace_back(BeamSplitterStep{"a", "b", 0.8});
    c1.steps.emplace_back(PhaseStep{"c", 0.9});
    c2.steps.emplace_back(add);
    c2.steps.emplace_back(PhaseStep{"c", 0.9});
    c2.steps.emplace_back(BeamSplitterStep{"a", "b", 0.8});
    const RunResult r1 = run(c1), r2 = run(c2);
    CHECK(test_helpers::max_amplitude_difference(r1.final_state, r2.final_state) < 1e-12);
}

TEST_CASE("run propagates failures with the step index") {
    Circuit c;
    c.name = "boom";
    c.steps.emplace_back(AddFockStep{{"a"}, {0}, {1}});
    c.steps.emplace_back(ConditionStep{"a", 1});
    try {
        run(c);
        FAIL("expected ImpossibleOutcomeError");
    } catch (const ImpossibleOutcomeError& e) {
        CHECK(std::string(e.what()).find("step 1") != std::string::npos);
    }
    Circuit bad;
    bad.steps.emplace_back(BeamSplitterStep{"a", "b", 0.5});
    CHECK_THROWS_AS(run(bad), ArgumentError);
}

TEST_CASE("circuit text round-trips") {
    Circuit c;
    c.name = "round trip \"quoted\"";
    c.steps.emplace_back(AddCoherentStep{"A", Complex{2.9, 0.7071067811865476}, -1});
    c.steps.emplace_back(AddFockStep{{"ref", "B"}, {0, 1}, {0, 1}});
    c.steps.emplace_back(BeamSplitterStep{"A", "ref", std::sqrt(2.0) / 3.0});
    c.steps.emplace_back(MirrorStep{"ref"});
    c.steps.emplace_back(PhaseStep{"B", std::numbers::pi});
    c.steps.emplace_back(ConditionStep{"A", 1});
    c.steps.emplace_back(DropFactorizedStep{"ref", 1e-9});
    const std::string text = to_text(c);
    const Circuit parsed = parse_circuit(text);
    CHECK(to_text(parsed) == text);
    CHECK(parsed.name == c.name);
    REQUIRE(parsed.steps.size() == c.steps.size());
}

TEST_CASE("parse_circuit rejects malformed text") {
    CHECK_THROWS_AS(parse_circuit("nope"), ArgumentError);
    CHECK_THROWS_AS(parse_circuit("circuit \"x\" { teleport port=\"a\" }"), ArgumentError);
    CHECK_THROWS_AS(parse_circuit("circuit \"x\" {"), ArgumentError);
    CHECK_THROWS_AS(parse_circuit("circuit \"x\" {} extra"), ArgumentError);
}

TEST_CASE("pruning is recorded in the deficit ledger") {
    Circuit c;
    c.name = "prune";
    c.steps.emplace_back(AddCoherentStep{"x", Complex{1.0, 0.0}, 20});
    c.steps.emplace_back(AddFockStep{{"y"}, {0}, {0}});
    c.steps.emplace_back(BeamSplitterStep{"x", "y", kInvSqrt2});
    RunOptions opt;
    opt.prune_eps = 1e-7;
    const RunResult pruned = run(c, opt);
    const RunResult exact = run(c);
    CHECK(pruned.total_norm_deficit > exact.total_norm_deficit);
    CHECK(pruned.final_state.amplitudes().size() < exact.final_state.amplitudes().size());
    CHECK(pruned.branch_weight + pruned.discarded_weight + pruned.total_norm_deficit ==
          doctest::Approx(1.0).epsilon(1e-10));
}
