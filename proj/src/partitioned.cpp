#include "sqca/partitioned.hpp"

#include <cmath>
#include <stdexcept>

#include "sqca/unitarity.hpp"

namespace sqca {

namespace {

constexpr double kBlockTol = 1e-12;

bool block_unitary(const BlockRule& block) {
    const auto& b = block.entries;
    // B B^+ = I entrywise
    const Cx r00 = b[0][0] * std::conj(b[0][0]) + b[0][1] * std::conj(b[0][1]) - 1.0;
    const Cx r01 = b[0][0] * std::conj(b[1][0]) + b[0][1] * std::conj(b[1][1]);
    const Cx r11 = b[1][0] * std::conj(b[1][0]) + b[1][1] * std::conj(b[1][1]) - 1.0;
    return std::abs(r00) <= kBlockTol && std::abs(r01) <= kBlockTol &&
           std::abs(r11) <= kBlockTol;
}

// Block-diagonal operator over the disjoint pairs (left_i, right_i).
EvolutionOperator pair_phase(const LatticeShape& shape, const BlockRule& block,
                             std::int64_t first_left) {
    const std::int64_t n = shape.volume();
    std::vector<std::vector<SparseEntry>> rows(n);
    const auto& b = block.entries;
    for (std::int64_t left = first_left; left < first_left + n; left += 2) {
        const std::int64_t l = left % n;
        const std::int64_t r = (left + 1) % n;
        rows[l] = {{l, b[0][0]}, {r, b[0][1]}};
        rows[r] = {{l, b[1][0]}, {r, b[1][1]}};
        if (r < l) { // wrapped pair: keep columns sorted
            rows[l] = {{r, b[0][1]}, {l, b[0][0]}};
            rows[r] = {{r, b[1][1]}, {l, b[1][0]}};
        }
    }
    return {shape, std::move(rows), std::vector<bool>(n, false), false};
}

} // namespace

BlockRule rotation_block(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {{{{Cx{c, 0.0}, Cx{0.0, s}}, {Cx{0.0, s}, Cx{c, 0.0}}}}};
}

TwoPhaseOperator build_partitioned(std::int64_t n, const BlockRule& block) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("build_partitioned: n must be even and >= 4");
    if (!block_unitary(block))
        throw std::invalid_argument("build_partitioned: block is not unitary");

    const LatticeShape shape({n});
    EvolutionOperator even = pair_phase(shape, block, 0);
    EvolutionOperator odd = pair_phase(shape, block, 1);
    EvolutionOperator composite = compose(odd, even);
    return {shape, std::move(even), std::move(odd), std::move(composite)};
}

FieldState step(const TwoPhaseOperator& op, const FieldState& state) {
    if (!(state.shape == op.shape))
        throw std::invalid_argument("step: shape mismatch");
    return apply(op.odd_phase, apply(op.even_phase, state));
}

SubgroupInvarianceReport subgroup_invariance_report(const TwoPhaseOperator& op) {
    const Cx one{1.0, 0.0};
    const EvolutionOperator shift1 = translation_operator(op.shape, {1}, one);
    const EvolutionOperator shift2 = translation_operator(op.shape, {2}, one);

    SubgroupInvarianceReport report;
    report.shift2_commutator_max = max_entry_difference(compose(op.composite, shift2),
                                                        compose(shift2, op.composite));
    report.commutes_with_shift2 = report.shift2_commutator_max <= 1e-12;
    report.shift1_commutator_max = max_entry_difference(compose(op.composite, shift1),
                                                        compose(shift1, op.composite));
    return report;
}

} // namespace sqca
