#include "sqca/histories.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace sqca {

namespace {

constexpr double kEnumerationGuard = 1e7;

// Paths are stored as cell sequences, so each step must name a unique
// stencil offset: wrap has to be injective on E itself.
void require_offsets_distinct_mod(const LatticeShape& shape, const Stencil& stencil) {
    std::set<std::int64_t> seen;
    for (const Offset& e : stencil.offsets())
        if (!seen.insert(lex_index(wrap(e, shape), shape)).second)
            throw std::invalid_argument(
                "histories: two stencil offsets coincide after wrap; "
                "cell sequences would not determine step weights");
}

// wrap(e) as a flat cell index -> w(e); one lookup per path step.
std::map<std::int64_t, Cx> step_weights(const LatticeShape& shape,
                                        const RuleWeights& rule) {
    std::map<std::int64_t, Cx> table;
    for (std::size_t i = 0; i < rule.stencil().size(); ++i)
        table.emplace(lex_index(wrap(rule.stencil().offsets()[i], shape), shape),
                      rule.weights()[i]);
    return table;
}

// Flat index of the wrapped difference to - from.
std::int64_t step_key(const LatticeShape& shape, const Coord& from, const Coord& to) {
    Offset diff(from.size());
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = to[c] - from[c];
    return lex_index(wrap(diff, shape), shape);
}

// Product of step weights in step order t = T-1 down to 0.
Cx amplitude_of(const LatticeShape& shape, const std::map<std::int64_t, Cx>& weights,
                const std::vector<std::int64_t>& cells) {
    Cx amplitude = 1.0;
    for (std::size_t t = cells.size() - 1; t-- > 0;) {
        const auto it = weights.find(
            step_key(shape, coord_of(cells[t + 1], shape), coord_of(cells[t], shape)));
        if (it == weights.end())
            throw std::invalid_argument("path step " + std::to_string(t) +
                                        " matches no stencil offset");
        amplitude *= it->second;
    }
    return amplitude;
}

void validate_spec(const LatticeShape& shape, const HistorySetSpec& spec) {
    if (spec.truncation < 0)
        throw std::invalid_argument("histories: negative truncation time");
    if (spec.sources.empty())
        throw std::invalid_argument("histories: at least one source cell required");
    std::set<std::int64_t> distinct;
    for (std::int64_t cell : spec.sources) {
        if (cell < 0 || cell >= shape.volume())
            throw std::invalid_argument("histories: source cell out of range");
        if (!distinct.insert(cell).second)
            throw std::invalid_argument("histories: duplicate source cell");
    }
    for (const TimeCondition& condition : spec.conditions) {
        if (condition.time <= 0 || condition.time >= spec.truncation)
            throw std::invalid_argument(
                "histories: condition times must lie strictly between 0 and the "
                "truncation time");
        for (std::int64_t cell : condition.cells)
            if (cell < 0 || cell >= shape.volume())
                throw std::invalid_argument("histories: condition cell out of range");
    }
}

void check_enumeration_guard(const Stencil& stencil, std::int64_t truncation) {
    const double estimate =
        std::pow(static_cast<double>(stencil.size()), static_cast<double>(truncation));
    if (estimate > kEnumerationGuard)
        throw std::invalid_argument(
            "histories: enumeration refused, about " + std::to_string(estimate) +
            " paths exceed the 1e7 guard");
}

template <typename Visit>
void walk_paths(const LatticeShape& shape, const RuleWeights& rule,
                const HistorySetSpec& spec, Visit&& visit) {
    // allowed-cell set per time, nullptr when unconstrained
    std::vector<std::set<std::int64_t>> storage;
    storage.reserve(spec.conditions.size()); // pointers into storage must stay valid
    std::vector<const std::set<std::int64_t>*> allowed(spec.truncation + 1, nullptr);
    for (const TimeCondition& condition : spec.conditions) {
        std::set<std::int64_t> cells(condition.cells.begin(), condition.cells.end());
        if (const auto* prior = allowed[condition.time]) {
            std::set<std::int64_t> intersection;
            for (std::int64_t cell : *prior)
                if (cells.count(cell)) intersection.insert(cell);
            cells = std::move(intersection);
        }
        storage.push_back(std::move(cells));
        allowed[condition.time] = &storage.back();
    }

    const auto& offsets = rule.stencil().offsets();
    std::vector<std::int64_t> cells(spec.truncation + 1);
    auto descend = [&](auto&& self, std::int64_t t) -> void {
        if (t == spec.truncation) {
            visit(cells);
            return;
        }
        const Coord at = coord_of(cells[t], shape);
        Offset next(at.size());
        for (const Offset& e : offsets) {
            // the particle sits at x+e and arrives at x: invert per step
            for (std::size_t c = 0; c < next.size(); ++c) next[c] = at[c] - e[c];
            const std::int64_t cell = lex_index(wrap(next, shape), shape);
            if (allowed[t + 1] && !allowed[t + 1]->count(cell)) continue;
            cells[t + 1] = cell;
            self(self, t + 1);
        }
    };
    for (std::int64_t source : spec.sources) {
        cells[0] = source;
        descend(descend, 0);
    }
}

} // namespace

Cx path_amplitude(const LatticeShape& shape, const RuleWeights& rule, const Path& path) {
    if (path.cells.empty())
        throw std::invalid_argument("path_amplitude: path needs a cell at time 0");
    for (std::int64_t cell : path.cells)
        if (cell < 0 || cell >= shape.volume())
            throw std::invalid_argument("path_amplitude: cell out of range");
    require_offsets_distinct_mod(shape, rule.stencil());
    return amplitude_of(shape, step_weights(shape, rule), path.cells);
}

std::vector<Path> enumerate_paths(const LatticeShape& shape, const RuleWeights& rule,
                                  const HistorySetSpec& spec) {
    validate_spec(shape, spec);
    require_offsets_distinct_mod(shape, rule.stencil());
    check_enumeration_guard(rule.stencil(), spec.truncation);

    std::vector<Path> paths;
    walk_paths(shape, rule, spec,
               [&](const std::vector<std::int64_t>& cells) { paths.push_back({cells}); });
    std::sort(paths.begin(), paths.end(),
              [](const Path& a, const Path& b) { return a.cells < b.cells; });
    return paths;
}

double set_probability(const LatticeShape& shape, const RuleWeights& rule,
                       const HistorySetSpec& spec) {
    validate_spec(shape, spec);
    require_offsets_distinct_mod(shape, rule.stencil());
    check_enumeration_guard(rule.stencil(), spec.truncation);

    // A(x) = sum of amplitudes of paths ending at x; |S| = sum |A(x)|^2.
    const auto weights = step_weights(shape, rule);
    std::vector<Cx> by_final_cell(shape.volume(), Cx{});
    walk_paths(shape, rule, spec, [&](const std::vector<std::int64_t>& cells) {
        by_final_cell[cells.back()] += amplitude_of(shape, weights, cells);
    });

    Cx total{};
    for (const Cx& a : by_final_cell) total += a * std::conj(a);
    // grouping keeps the pair sum structurally real; the guard mirrors the
    // delta-function bookkeeping of the raw double sum
    if (std::fabs(total.imag()) > 1e-9)
        throw std::logic_error("set_probability: pair sum acquired an imaginary part");
    return total.real();
}

double truncation_invariance_gap(const LatticeShape& shape, const RuleWeights& rule,
                                 const HistorySetSpec& spec, std::int64_t t1,
                                 std::int64_t t2) {
    if (t1 > t2)
        throw std::invalid_argument("truncation_invariance_gap: need T1 <= T2");
    for (const TimeCondition& condition : spec.conditions)
        if (condition.time >= t1)
            throw std::invalid_argument(
                "truncation_invariance_gap: both truncation times must be to the "
                "future of every condition");
    HistorySetSpec first = spec;
    first.truncation = t1;
    HistorySetSpec second = spec;
    second.truncation = t2;
    return std::fabs(set_probability(shape, rule, second) -
                     set_probability(shape, rule, first));
}

} // namespace sqca
