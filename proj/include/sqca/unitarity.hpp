#pragma once

#include <utility>
#include <vector>

#include "sqca/evolution.hpp"

namespace sqca {

// Shared default for the unitarity checks and the classifier: double
// accumulation over <= 10^4 terms stays far below this for true unitaries.
inline constexpr double kDefaultTol = 1e-10;

// All distinct e - e' over the stencil, lex sorted; contains 0 and is closed
// under negation.
std::vector<Offset> displacement_set(const Stencil& stencil);

// C(delta) = sum over e in E with e-delta in E of w(e) * conj(w(e - delta)),
// summed in stencil order.  Unitarity demands C(0) = 1 and C(delta) = 0
// elsewhere; one condition per pair of cells with intersecting neighborhoods.
Cx condition_value(const RuleWeights& rule, const Offset& delta);

struct UnitarityReport {
    // (delta, C(delta) - [delta = 0]) for every delta in the displacement
    // set, in lex order.
    std::vector<std::pair<Offset, Cx>> residuals;
    double max_abs_residual = 0.0;
    double tol = kDefaultTol;
    bool passed = false;
};

// Shape-independent: operates on unwrapped offsets.  Pair with aliasing_free
// before drawing conclusions about a specific finite lattice.
UnitarityReport local_conditions(const RuleWeights& rule, double tol = kDefaultTol);

struct GlobalCheckResult {
    bool passed = false;
    double max_deviation = 0.0;
};

// Max modulus entry of U U^+ - I.
GlobalCheckResult global_check(const EvolutionOperator& op, double tol = kDefaultTol);

// True iff wrap is injective on the displacement set; sufficient for the
// local and global checks to agree on this shape.
bool aliasing_free(const LatticeShape& shape, const Stencil& stencil);

} // namespace sqca
