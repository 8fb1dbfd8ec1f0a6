#pragma once

#include <array>
#include <cstdint>

#include "sqca/evolution.hpp"

namespace sqca {

// 2x2 particle scattering matrix, unitary within 1e-12.
struct BlockRule {
    std::array<std::array<Cx, 2>, 2> entries;
};

// ((cos t, i sin t), (i sin t, cos t)); identity at t = 0, pair swap times i
// at t = pi/2.
BlockRule rotation_block(double theta);

// Two-phase partitioned evolution on a 1-d even-length lattice: the even
// phase applies the block to pairs (2i, 2i+1), the odd phase to pairs
// (2i+1, 2i+2 mod n), block rows/columns ordered (left cell, right cell).
// The composite is invariant under translation by 2 but generically not by 1,
// which is exactly how it escapes the homogeneous classification.
struct TwoPhaseOperator {
    LatticeShape shape;
    EvolutionOperator even_phase;
    EvolutionOperator odd_phase;
    EvolutionOperator composite; // odd_phase * even_phase as sparse product
};

// n even, n >= 4; the block must be unitary.
TwoPhaseOperator build_partitioned(std::int64_t n, const BlockRule& block);

// Even phase then odd phase.
FieldState step(const TwoPhaseOperator& op, const FieldState& state);

struct SubgroupInvarianceReport {
    bool commutes_with_shift2 = false;
    double shift2_commutator_max = 0.0; // entrywise, expected 0
    double shift1_commutator_max = 0.0; // nonzero for generic blocks
};

SubgroupInvarianceReport subgroup_invariance_report(const TwoPhaseOperator& op);

} // namespace sqca
