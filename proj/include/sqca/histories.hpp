#pragma once

#include <cstdint>
#include <vector>

#include "sqca/evolution.hpp"

namespace sqca {

// One spacetime history: the particle's cell at each timestep 0..T.
// Consecutive cells satisfy cell_t = wrap(cell_{t+1} + e) for a stencil
// offset e (the step weight w(e) is the amplitude to move from x+e to x).
struct Path {
    std::vector<std::int64_t> cells;
};

// Projector constraint: at `time` the path must sit in `cells`.
struct TimeCondition {
    std::int64_t time;
    std::vector<std::int64_t> cells;
};

// A set of histories: paths starting at any source cell at time 0 (each with
// unnormalized amplitude 1), meeting every condition, truncated at time T.
// Condition times lie strictly between 0 and T: time 0 belongs to the
// sources and the truncation surface must be to the future of all conditions.
struct HistorySetSpec {
    std::vector<std::int64_t> sources;
    std::vector<TimeCondition> conditions;
    std::int64_t truncation = 0;
};

// Product of step weights, multiplied in step order t = T-1 down to 0.
// Requires wrap to be injective on the stencil so each step names a unique
// offset; a step matching no offset is an input error.
Cx path_amplitude(const LatticeShape& shape, const RuleWeights& rule, const Path& path);

// All paths satisfying the spec, sorted lexicographically by cell sequence.
// Refused when |E|^T exceeds 10^7 (the message carries the estimate).
std::vector<Path> enumerate_paths(const LatticeShape& shape, const RuleWeights& rule,
                                  const HistorySetSpec& spec);

// |S| = sum over path pairs of w(g1) conj(w(g2)) [g1(T) = g2(T)], computed by
// grouping paths by final cell: accumulate A(x) = sum of amplitudes ending at
// x, then sum |A(x)|^2. Algebraically identical, O(paths) instead of
// O(paths^2).
double set_probability(const LatticeShape& shape, const RuleWeights& rule,
                       const HistorySetSpec& spec);

// |P(T2) - P(T1)| with identical conditions; zero for unitary rules.  Both
// truncation times must be to the future of every condition; T1 = T2 is
// allowed and gives exactly zero.
double truncation_invariance_gap(const LatticeShape& shape, const RuleWeights& rule,
                                 const HistorySetSpec& spec, std::int64_t t1,
                                 std::int64_t t2);

} // namespace sqca
