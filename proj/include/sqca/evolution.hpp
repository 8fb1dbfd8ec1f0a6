#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqca/lattice.hpp"

namespace sqca {

using Cx = std::complex<double>;

// Homogeneous additive rule: one complex weight per stencil offset.  Weights
// are bounded by the state-set modulus 1 (with a small slack for rounding).
class RuleWeights {
public:
    RuleWeights(Stencil stencil, std::vector<Cx> weights);

    const Stencil& stencil() const { return stencil_; }
    const std::vector<Cx>& weights() const { return weights_; }
    std::int64_t dim() const { return stencil_.dim(); }

private:
    Stencil stencil_;
    std::vector<Cx> weights_;
};

struct SparseEntry {
    std::int64_t col;
    Cx value;
};

// Explicit evolution matrix, one sorted sparse row per cell.  Structural
// zeros declared by a rule are kept: sparsity follows the stencil, not the
// numeric magnitude of the weights.
class EvolutionOperator {
public:
    EvolutionOperator(LatticeShape shape,
                      std::vector<std::vector<SparseEntry>> rows,
                      std::vector<bool> row_wrapped,
                      bool aliased);

    const LatticeShape& shape() const { return shape_; }
    std::int64_t volume() const { return shape_.volume(); }
    const std::vector<SparseEntry>& row(std::int64_t x) const { return rows_[x]; }

    // True when two stencil offsets wrapped onto one column somewhere; their
    // weights were summed and analysis modules may refuse the operator.
    bool aliased() const { return aliased_; }

    // True when building row x required a modular reduction.  Meaningful for
    // operators built from a rule or translation; false everywhere on
    // composed operators.
    bool row_wrapped(std::int64_t x) const { return row_wrapped_[x]; }

private:
    LatticeShape shape_;
    std::vector<std::vector<SparseEntry>> rows_;
    std::vector<bool> row_wrapped_;
    bool aliased_;
};

struct FieldState {
    LatticeShape shape;
    std::vector<Cx> amplitudes;
};

FieldState delta_state(const LatticeShape& shape, std::int64_t cell);
double l2_norm(const FieldState& state);

// Row x gets w(e) at column lex_index(wrap(coord_of(x) + e)) for each offset.
EvolutionOperator build_operator(const LatticeShape& shape, const RuleWeights& rule);

// out(x) = sum of entry * state(col) over row x, in stored column order.
FieldState apply(const EvolutionOperator& op, const FieldState& state);

// Permutation times a unimodular phase; unitary by construction.
EvolutionOperator translation_operator(const LatticeShape& shape, const Offset& offset,
                                       Cx phase);

// K = 1 + n_d + n_d n_{d-1} + ... + n_d...n_2; a radius-r rule's flattened
// matrix is (sparsely) band Kr-diagonal.
std::int64_t bandwidth_K(const LatticeShape& shape);

// 1 + 4Kr <= volume: the lattice is big enough that U U^+ of a band
// Kr-diagonal U is still band diagonal.
bool size_condition(const LatticeShape& shape, std::int64_t r);

// Max |row - col| over numerically nonzero entries, no wrap correction.
// With include_wrapping_rows false, rows flagged row_wrapped are skipped.
std::int64_t measured_bandwidth(const EvolutionOperator& op,
                                bool include_wrapping_rows = true);

// Sparse product a*b.  Wrap flags do not survive composition.
EvolutionOperator compose(const EvolutionOperator& a, const EvolutionOperator& b);

// Conjugate transpose.
EvolutionOperator adjoint(const EvolutionOperator& op);

// Entrywise comparison over the union of sparsity patterns (absent = 0).
bool exact_equal(const EvolutionOperator& a, const EvolutionOperator& b);
double max_entry_difference(const EvolutionOperator& a, const EvolutionOperator& b);

} // namespace sqca
