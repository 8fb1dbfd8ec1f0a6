#pragma once

// Test-only oracles, deliberately independent of the sparse implementation
// path they cross-check: dense matrices built straight from the local-rule
// definition, and brute-force condition/pair sums.

#include <complex>
#include <vector>

#include <doctest.h>

#include "sqca/evolution.hpp"
#include "sqca/histories.hpp"
#include "sqca/rng.hpp"
#include "sqca/unitarity.hpp"

namespace sqca::testing {

using Dense = std::vector<std::vector<Cx>>;

inline Dense dense_zero(std::int64_t n) {
    return Dense(n, std::vector<Cx>(n, Cx{}));
}

// Row x reads w(e) from cell x+e, periodic wrap; no sparsity bookkeeping.
inline Dense dense_from_rule(const LatticeShape& shape, const RuleWeights& rule) {
    Dense m = dense_zero(shape.volume());
    for (std::int64_t x = 0; x < shape.volume(); ++x) {
        const Coord at = coord_of(x, shape);
        for (std::size_t i = 0; i < rule.stencil().size(); ++i) {
            Offset target(at.size());
            for (std::size_t c = 0; c < at.size(); ++c)
                target[c] = at[c] + rule.stencil().offsets()[i][c];
            m[x][lex_index(wrap(target, shape), shape)] += rule.weights()[i];
        }
    }
    return m;
}

inline Dense dense_from_operator(const EvolutionOperator& op) {
    Dense m = dense_zero(op.volume());
    for (std::int64_t x = 0; x < op.volume(); ++x)
        for (const SparseEntry& entry : op.row(x)) m[x][entry.col] += entry.value;
    return m;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
    const std::size_t n = a.size();
    Dense out = dense_zero(static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Dense dense_adjoint(const Dense& a) {
    const std::size_t n = a.size();
    Dense out = dense_zero(static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = std::conj(a[j][i]);
    return out;
}

inline double dense_max_abs_difference(const Dense& a, const Dense& b) {
    double max = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            max = std::max(max, std::abs(a[i][j] - b[i][j]));
    return max;
}

inline double dense_unitarity_deviation(const Dense& u) {
    const Dense product = dense_mul(u, dense_adjoint(u));
    double max = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) {
            const Cx expected = i == j ? Cx{1.0, 0.0} : Cx{};
            max = std::max(max, std::abs(product[i][j] - expected));
        }
    return max;
}

// C(delta) by scanning every stencil pair, no index lookups.
inline Cx brute_condition(const RuleWeights& rule, const Offset& delta) {
    Cx sum{};
    const auto& offsets = rule.stencil().offsets();
    for (std::size_t i = 0; i < offsets.size(); ++i)
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            bool matches = true;
            for (std::size_t c = 0; c < delta.size(); ++c)
                if (offsets[i][c] - offsets[j][c] != delta[c]) matches = false;
            if (matches) sum += rule.weights()[i] * std::conj(rule.weights()[j]);
        }
    return sum;
}

// The raw double sum over path pairs with the final-cell delta function.
inline double brute_set_probability(const LatticeShape& shape, const RuleWeights& rule,
                                    const HistorySetSpec& spec) {
    const std::vector<Path> paths = enumerate_paths(shape, rule, spec);
    std::vector<Cx> amplitudes;
    amplitudes.reserve(paths.size());
    for (const Path& path : paths)
        amplitudes.push_back(path_amplitude(shape, rule, path));
    Cx total{};
    for (std::size_t a = 0; a < paths.size(); ++a)
        for (std::size_t b = 0; b < paths.size(); ++b)
            if (paths[a].cells.back() == paths[b].cells.back())
                total += amplitudes[a] * std::conj(amplitudes[b]);
    REQUIRE(std::fabs(total.imag()) <= 1e-9);
    return total.real();
}

inline std::vector<Cx> random_disc_weights(SplitMix64& rng, std::size_t count) {
    std::vector<Cx> weights(count);
    for (Cx& w : weights) w = rng.next_in_unit_disc();
    return weights;
}

inline RuleWeights random_rule(SplitMix64& rng, const Stencil& stencil) {
    return {stencil, random_disc_weights(rng, stencil.size())};
}

} // namespace sqca::testing
