#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <variant>

#include "helpers.hpp"
#include "sqca/nogo.hpp"

using namespace sqca;
using namespace sqca::testing;

namespace {

std::size_t count_above(const std::vector<Cx>& weights, double threshold) {
    std::size_t count = 0;
    for (const Cx& w : weights)
        if (std::abs(w) > threshold) ++count;
    return count;
}

} // namespace

TEST_SUITE("nogo") {

TEST_CASE("classify: pure translation at the middle offset") {
    const RuleWeights rule(box_stencil(1, 1), {Cx{}, Cx{0.6, 0.8}, Cx{}});
    const NogoVerdict verdict = classify(rule, 1e-10);
    const auto* tp = std::get_if<TranslationPhase>(&verdict);
    REQUIRE(tp != nullptr);
    CHECK(tp->offset == Offset{0});
    CHECK(tp->phase == Cx{0.6, 0.8});
}

TEST_CASE("classify: two live weights violate the sliding conditions") {
    const Cx s{M_SQRT1_2, 0.0};
    const NogoVerdict verdict = classify({box_stencil(1, 1), {s, s, Cx{}}}, 1e-10);
    const auto* violation = std::get_if<ConditionViolation>(&verdict);
    REQUIRE(violation != nullptr);
    CHECK(violation->delta == Offset{1}); // e_2 - e_1 in the sliding order
    CHECK(std::abs(violation->residual) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("classify: all weights under tolerance") {
    const NogoVerdict verdict =
        classify({box_stencil(1, 1), {Cx{}, Cx{}, Cx{}}}, 1e-10);
    CHECK(std::holds_alternative<AllZero>(verdict));
    CHECK(std::holds_alternative<AllZero>(
        classify({triangular_stencil(), std::vector<Cx>(7, Cx{1e-12, 0.0})}, 1e-10)));
    CHECK_THROWS_AS(classify({box_stencil(1, 1), {Cx{}, Cx{}, Cx{}}}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("classify strict mode guards the tolerance boundary") {
    // weights exactly at tol are not counted live, yet C(1) = tol + tol^2
    // sits just above tol; only the full condition sweep notices
    const double tol = 1e-10;
    const RuleWeights rule(box_stencil(1, 1),
                           {Cx{tol, 0.0}, Cx{tol, 0.0}, Cx{1.0, 0.0}});
    CHECK(std::holds_alternative<TranslationPhase>(classify(rule, tol)));
    CHECK(std::holds_alternative<ConditionViolation>(classify(rule, tol, true)));
}

TEST_CASE("classify soundness: verdicts reproduce the rule and pass the matrix check") {
    SplitMix64 rng(31);
    const Stencil stencil = box_stencil(2, 1);
    const LatticeShape shape({9, 9});
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t position = rng.next() % stencil.size();
        const double angle = 2.0 * M_PI * rng.next_double();
        std::vector<Cx> weights(stencil.size(), Cx{});
        weights[position] = Cx{std::cos(angle), std::sin(angle)};
        // sub-tolerance noise on the other weights must not change anything
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (i != position) weights[i] = 1e-12 * rng.next_in_unit_disc();
        const RuleWeights rule(stencil, weights);

        const NogoVerdict verdict = classify(rule, 1e-10);
        const auto* tp = std::get_if<TranslationPhase>(&verdict);
        REQUIRE(tp != nullptr);
        CHECK(tp->offset == stencil.offsets()[position]);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const Cx expected = i == position ? tp->phase : Cx{};
            CHECK(std::abs(weights[i] - expected) <= 1e-10);
        }
        CHECK(global_check(build_operator(shape, rule), 1e-9).passed);
    }
}

TEST_CASE("classify completeness: multi-weight rules are never translations") {
    SplitMix64 rng(32);
    int tested = 0;
    while (tested < 2000) {
        const RuleWeights rule = random_rule(rng, box_stencil(1, 1));
        if (count_above(rule.weights(), 0.1) < 2) continue;
        ++tested;
        CHECK(std::holds_alternative<ConditionViolation>(classify(rule, 1e-10)));
    }
}

TEST_CASE("classify agrees with the local conditions") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        RuleWeights rule = random_rule(rng, box_stencil(1, 1));
        if (trial % 4 == 0) {
            // mix in exact translations so both outcomes occur
            std::vector<Cx> weights(3, Cx{});
            const double angle = 2.0 * M_PI * rng.next_double();
            weights[rng.next() % 3] = Cx{std::cos(angle), std::sin(angle)};
            rule = RuleWeights(box_stencil(1, 1), weights);
        }
        const bool translation =
            std::holds_alternative<TranslationPhase>(classify(rule, 1e-10));
        CHECK(translation == local_conditions(rule, 1e-10).passed);
    }
}

TEST_CASE("elimination trace: translation at the last offset concludes immediately") {
    const RuleWeights rule(box_stencil(1, 1), {Cx{}, Cx{}, Cx{1.0, 0.0}});
    const EliminationTrace trace = elimination_trace(rule, 1e-10);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].kind == TraceStep::Kind::conclude);
    CHECK(trace.pivot == 3);
    CHECK(trace.pivot_offset == Offset{1});
    CHECK(trace.completed);
}

TEST_CASE("elimination trace: translation at the first offset walks the whole stencil") {
    const RuleWeights rule(box_stencil(1, 1), {Cx{1.0, 0.0}, Cx{}, Cx{}});
    const EliminationTrace trace = elimination_trace(rule, 1e-10);
    REQUIRE(trace.steps.size() == 3);
    CHECK(trace.steps[0].kind == TraceStep::Kind::eliminate);
    CHECK(trace.steps[0].position == 3);
    CHECK(trace.steps[0].delta == Offset{2});
    CHECK(trace.steps[1].position == 2);
    CHECK(trace.steps[1].delta == Offset{1});
    CHECK(trace.steps[2].kind == TraceStep::Kind::conclude);
    CHECK(trace.steps[2].position == 1);
    CHECK(trace.completed);
}

TEST_CASE("elimination trace: radius-2 translation at position 2 takes 23 steps") {
    const Stencil stencil = box_stencil(2, 2);
    std::vector<Cx> weights(stencil.size(), Cx{});
    weights[1] = Cx{1.0, 0.0}; // position 2 in 1-based order
    const EliminationTrace trace = elimination_trace({stencil, weights}, 1e-10);
    REQUIRE(trace.steps.size() == 24); // 23 eliminations, then the conclusion
    for (std::size_t i = 0; i < 23; ++i) {
        CHECK(trace.steps[i].kind == TraceStep::Kind::eliminate);
        CHECK(trace.steps[i].position == 25 - i);
        CHECK(trace.steps[i].satisfied);
    }
    CHECK(trace.steps[23].kind == TraceStep::Kind::conclude);
    CHECK(trace.steps[23].position == 2);
    CHECK(trace.completed);
}

TEST_CASE("elimination trace stops at the first violated condition") {
    const Cx s{M_SQRT1_2, 0.0};
    const EliminationTrace trace = elimination_trace({box_stencil(1, 1), {s, s, Cx{}}}, 1e-10);
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].satisfied);       // position 3 eliminated
    CHECK_FALSE(trace.steps[1].satisfied); // C(1) = 1/2
    CHECK_FALSE(trace.completed);
}

TEST_CASE("elimination trace rejects the zero rule") {
    CHECK_THROWS_AS(elimination_trace({box_stencil(1, 1), {Cx{}, Cx{}, Cx{}}}, 1e-10),
                    std::invalid_argument);
}

TEST_CASE("trace length is |E| - k eliminations plus a conclusion") {
    SplitMix64 rng(34);
    const Stencil stencil = box_stencil(1, 2);
    for (std::size_t k = 0; k < stencil.size(); ++k) {
        const double angle = 2.0 * M_PI * rng.next_double();
        std::vector<Cx> weights(stencil.size(), Cx{});
        weights[k] = Cx{std::cos(angle), std::sin(angle)};
        const EliminationTrace trace = elimination_trace({stencil, weights}, 1e-10);
        CHECK(trace.steps.size() == stencil.size() - k);
        CHECK(trace.pivot == k + 1);
        CHECK(trace.completed);
    }
}

TEST_CASE("random search oracle finds only single-weight solutions") {
    const auto points = random_search_oracle(box_stencil(1, 1), 42, 100);
    REQUIRE(points.size() == 100);
    int converged = 0;
    for (const OraclePoint& point : points) {
        if (point.residual < 1e-8) {
            ++converged;
            CHECK(count_above(point.weights, 1e-4) == 1);
        }
    }
    CHECK(converged > 0); // the descent does reach the translation solutions
}

TEST_CASE("random search oracle on a singleton converges to a unimodular weight") {
    const auto points = random_search_oracle(Stencil::from_offsets({{0}}), 7, 5);
    for (const OraclePoint& point : points) {
        CHECK(point.residual < 1e-8);
        CHECK(std::fabs(std::abs(point.weights[0]) - 1.0) <= 1e-7);
    }
}

TEST_CASE("random search oracle is reproducible") {
    const auto first = random_search_oracle(box_stencil(1, 1), 2024, 5);
    const auto second = random_search_oracle(box_stencil(1, 1), 2024, 5);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].residual == second[i].residual);
        for (std::size_t j = 0; j < first[i].weights.size(); ++j)
            CHECK(first[i].weights[j] == second[i].weights[j]);
    }
}

TEST_CASE("exhaustive grid oracle: survivors are single-weight unimodular points") {
    const std::vector<double> moduli{0.0, M_SQRT1_2, 1.0};
    const auto survivors = exhaustive_grid_oracle(box_stencil(1, 1), moduli, 8);
    CHECK(survivors.size() == 24); // 3 positions x 8 phases
    for (const OraclePoint& point : survivors) {
        CHECK(count_above(point.weights, 1e-4) == 1);
        for (const Cx& w : point.weights)
            if (std::abs(w) > 1e-4) CHECK(std::fabs(std::abs(w) - 1.0) <= 1e-12);
    }
}

TEST_CASE("exhaustive grid oracle: flat 1/sqrt(3) moduli never survive") {
    const std::vector<double> moduli{1.0 / std::sqrt(3.0)};
    CHECK(exhaustive_grid_oracle(box_stencil(1, 1), moduli, 8).empty());
}

TEST_CASE("exhaustive grid oracle: singleton stencil keeps only modulus 1") {
    const auto survivors =
        exhaustive_grid_oracle(Stencil::from_offsets({{0}}), {0.0, 1.0}, 4);
    CHECK(survivors.size() == 4);
    for (const OraclePoint& point : survivors)
        CHECK(std::abs(point.weights[0]) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exhaustive grid oracle refuses large stencils") {
    CHECK_THROWS_AS(exhaustive_grid_oracle(box_stencil(1, 2), {0.0, 1.0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_grid_oracle(box_stencil(1, 1), {}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_grid_oracle(box_stencil(1, 1), {1.0}, 0),
                    std::invalid_argument);
}

} // TEST_SUITE
