#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "sqca/partitioned.hpp"
#include "sqca/unitarity.hpp"

using namespace sqca;
using namespace sqca::testing;

TEST_SUITE("partitioned") {

TEST_CASE("construction validates size and unitarity") {
    CHECK_THROWS_AS(build_partitioned(7, rotation_block(0.3)), std::invalid_argument);
    CHECK_THROWS_AS(build_partitioned(2, rotation_block(0.3)), std::invalid_argument);
    const BlockRule skewed{{{{Cx{0.9, 0.0}, Cx{0.1, 0.0}}, {Cx{0.1, 0.0}, Cx{0.9, 0.0}}}}};
    CHECK_THROWS_AS(build_partitioned(8, skewed), std::invalid_argument);
}

TEST_CASE("identity block gives the identity composite") {
    const TwoPhaseOperator op = build_partitioned(8, rotation_block(0.0));
    const EvolutionOperator id =
        translation_operator(op.shape, {0}, Cx{1.0, 0.0});
    CHECK(max_entry_difference(op.composite, id) == 0.0);
    const SubgroupInvarianceReport report = subgroup_invariance_report(op);
    CHECK(report.commutes_with_shift2);
    CHECK(report.shift1_commutator_max == 0.0);
}

TEST_CASE("block row convention: left cell first") {
    const BlockRule block{{{{Cx{0.6, 0.0}, Cx{0.0, 0.8}}, {Cx{0.0, 0.8}, Cx{0.6, 0.0}}}}};
    const TwoPhaseOperator op = build_partitioned(8, block);
    const FieldState mixed = apply(op.even_phase, delta_state(op.shape, 0));
    CHECK(mixed.amplitudes[0] == Cx{0.6, 0.0});
    CHECK(mixed.amplitudes[1] == Cx{0.0, 0.8});
    for (std::int64_t x = 2; x < 8; ++x) CHECK(mixed.amplitudes[x] == Cx{});
}

TEST_CASE("antidiagonal block: counter-moving permutation times p^2") {
    const Cx p{std::cos(0.7), std::sin(0.7)};
    const BlockRule swap{{{{Cx{}, p}, {p, Cx{}}}}};
    const TwoPhaseOperator op = build_partitioned(8, swap);

    // every row is a single entry of modulus 1: a permutation times p^2
    for (std::int64_t x = 0; x < 8; ++x) {
        REQUIRE(op.composite.row(x).size() == 1);
        CHECK(std::abs(op.composite.row(x)[0].value - p * p) <= 1e-15);
    }
    // even cells advance by 2, odd cells retreat by 2: not a translation,
    // so the shift-1 commutator is large on n = 8
    const SubgroupInvarianceReport report = subgroup_invariance_report(op);
    CHECK(report.commutes_with_shift2);
    CHECK(report.shift1_commutator_max > 0.9);

    // on n = 4 the two directions coincide and the composite is p^2 T_2,
    // which does commute with the 1-step translation
    const TwoPhaseOperator tiny = build_partitioned(4, swap);
    CHECK(max_entry_difference(tiny.composite,
                               translation_operator(tiny.shape, {2}, p * p)) <= 1e-15);
    CHECK(subgroup_invariance_report(tiny).shift1_commutator_max <= 1e-15);
}

TEST_CASE("rotation blocks give unitary phases and composite") {
    for (const double theta : {M_PI / 6.0, M_PI / 4.0, 1.0}) {
        const TwoPhaseOperator op = build_partitioned(16, rotation_block(theta));
        CHECK(global_check(op.even_phase, 1e-12).passed);
        CHECK(global_check(op.odd_phase, 1e-12).passed);
        CHECK(global_check(op.composite, 1e-12).passed);
        CHECK(dense_unitarity_deviation(dense_from_operator(op.composite)) <= 1e-12);
    }
}

TEST_CASE("step applies even then odd and preserves the norm") {
    const TwoPhaseOperator op = build_partitioned(16, rotation_block(M_PI / 4.0));
    FieldState state = delta_state(op.shape, 0);

    const FieldState once = step(op, state);
    const FieldState via_composite = apply(op.composite, state);
    for (std::int64_t x = 0; x < 16; ++x)
        CHECK(std::abs(once.amplitudes[x] - via_composite.amplitudes[x]) <= 1e-15);

    // one composite step reaches the 4 cells {n-1, 0, 1, 2}
    int support = 0;
    for (const Cx& a : once.amplitudes)
        if (std::abs(a) > 1e-15) ++support;
    CHECK(support == 4);

    for (int t = 0; t < 100; ++t) state = step(op, state);
    CHECK(std::fabs(l2_norm(state) - 1.0) <= 1e-10);

    CHECK_THROWS_AS(step(op, delta_state(LatticeShape({8}), 0)), std::invalid_argument);
}

TEST_CASE("identity block leaves any state untouched") {
    SplitMix64 rng(51);
    const TwoPhaseOperator op = build_partitioned(8, rotation_block(0.0));
    FieldState state{op.shape, random_disc_weights(rng, 8)};
    const FieldState out = step(op, state);
    for (std::int64_t x = 0; x < 8; ++x) CHECK(out.amplitudes[x] == state.amplitudes[x]);
}

TEST_CASE("subgroup invariance: shift-2 always, shift-1 only degenerately") {
    for (const double theta : {M_PI / 6.0, M_PI / 4.0, 1.0}) {
        for (const std::int64_t n : {8, 16}) {
            const TwoPhaseOperator op = build_partitioned(n, rotation_block(theta));
            const SubgroupInvarianceReport report = subgroup_invariance_report(op);
            CHECK(report.commutes_with_shift2);
            CHECK(report.shift2_commutator_max <= 1e-12);
            CHECK(report.shift1_commutator_max > 0.1);
        }
        // n = 4 is degenerate: shifting by +2 and -2 is the same move, the
        // two counter-propagating channels coincide, and the composite does
        // commute with the 1-step translation
        const TwoPhaseOperator tiny = build_partitioned(4, rotation_block(theta));
        CHECK(subgroup_invariance_report(tiny).shift1_commutator_max <= 1e-15);
    }
}

} // TEST_SUITE
