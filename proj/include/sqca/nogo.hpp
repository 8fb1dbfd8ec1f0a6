#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sqca/evolution.hpp"
#include "sqca/unitarity.hpp"

namespace sqca {

// Verdicts for a homogeneous scalar rule: below tolerance everywhere, a pure
// translation times a unimodular phase, or a concrete violated condition.
struct AllZero {};

struct TranslationPhase {
    Offset offset; // stencil member e_k
    Cx phase;      // w_k, |w_k| = 1 within the classification tolerance
};

struct ConditionViolation {
    Offset delta;
    Cx residual; // C(delta) - [delta = 0], modulus above tolerance
};

using NogoVerdict = std::variant<AllZero, TranslationPhase, ConditionViolation>;

// Sliding classification.  Let k be the first stencil position (lex order)
// whose weight modulus exceeds tol.  Checks C(e_j - e_k) for j = |E| down to
// k+1, then C(0) - 1; the first residual above tol is returned as a
// violation, otherwise the rule is translation by e_k times the phase w_k.
// With strict set, a full local_conditions pass is required as well, which
// guards the tolerance boundary where the |E| - k sliding conditions alone
// could be fooled by several weights sitting just under tol.
NogoVerdict classify(const RuleWeights& rule, double tol = kDefaultTol,
                     bool strict = false);

// One record per sliding step.  Positions are 1-based lex positions in the
// stencil, decreasing from |E| to k+1; the final step is the modulus-one
// conclusion at position k.
struct TraceStep {
    enum class Kind { eliminate, conclude };
    Kind kind;
    Offset delta;              // e_j - e_k (zero vector for the conclusion)
    std::size_t position;      // j for eliminations, k for the conclusion
    std::size_t pivot;         // k throughout
    std::size_t overlap_upper; // singleton-overlap label in x1's neighborhood (= j)
    std::size_t overlap_lower; // its label in x2's neighborhood (= k)
    Cx condition;              // C(delta), or C(0) for the conclusion
    bool satisfied;            // residual within tol
};

struct EliminationTrace {
    std::vector<TraceStep> steps; // eliminations then one conclusion
    std::size_t pivot = 0;        // k, 1-based
    Offset pivot_offset;
    Cx pivot_weight;
    bool completed = false; // false when the trace stopped at a violated step
};

// The sliding argument step by step; for rules that fail, the trace ends at
// the first violated step.
EliminationTrace elimination_trace(const RuleWeights& rule, double tol = kDefaultTol);

struct OraclePoint {
    std::vector<Cx> weights;
    double residual; // max condition-residual modulus at the final point
};

// Independent numerical confirmation: per restart, weights drawn uniformly
// from the unit disc (SplitMix64, one child stream per restart), then the sum
// of squared condition residuals is minimized by deterministic coordinate
// descent on the real and imaginary parts.
std::vector<OraclePoint> random_search_oracle(const Stencil& stencil,
                                              std::uint64_t seed,
                                              std::int64_t restarts);

// Brute-force oracle for |E| <= 3: enumerates weights with moduli from the
// grid and phases at resolution 2*pi/phase_count (zero moduli keep phase 0),
// returning assignments with max residual <= 1e-2.
std::vector<OraclePoint> exhaustive_grid_oracle(const Stencil& stencil,
                                                const std::vector<double>& moduli_grid,
                                                std::int64_t phase_count);

} // namespace sqca
