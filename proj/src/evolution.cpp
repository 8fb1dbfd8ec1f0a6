#include "sqca/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sqca {

namespace {

constexpr double kModulusSlack = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

RuleWeights::RuleWeights(Stencil stencil, std::vector<Cx> weights)
    : stencil_(std::move(stencil)), weights_(std::move(weights)) {
    require(weights_.size() == stencil_.size(),
            "RuleWeights: one weight per stencil offset required");
    for (const Cx& w : weights_)
        require(std::abs(w) <= 1.0 + kModulusSlack,
                "RuleWeights: weight modulus exceeds the state-set bound 1");
}

EvolutionOperator::EvolutionOperator(LatticeShape shape,
                                     std::vector<std::vector<SparseEntry>> rows,
                                     std::vector<bool> row_wrapped, bool aliased)
    : shape_(std::move(shape)),
      rows_(std::move(rows)),
      row_wrapped_(std::move(row_wrapped)),
      aliased_(aliased) {}

FieldState delta_state(const LatticeShape& shape, std::int64_t cell) {
    require(cell >= 0 && cell < shape.volume(), "delta_state: cell out of range");
    FieldState state{shape, std::vector<Cx>(shape.volume(), Cx{})};
    state.amplitudes[cell] = 1.0;
    return state;
}

double l2_norm(const FieldState& state) {
    double sum = 0.0;
    for (const Cx& a : state.amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

EvolutionOperator build_operator(const LatticeShape& shape, const RuleWeights& rule) {
    require(rule.dim() == shape.dim(), "build_operator: dimension mismatch");
    const std::int64_t volume = shape.volume();
    const auto& offsets = rule.stencil().offsets();
    const auto& weights = rule.weights();

    std::vector<std::vector<SparseEntry>> rows(volume);
    std::vector<bool> row_wrapped(volume, false);
    bool aliased = false;
    Offset target(shape.dim());

    for (std::int64_t x = 0; x < volume; ++x) {
        const Coord at = coord_of(x, shape);
        auto& row = rows[x];
        row.reserve(offsets.size());
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            bool wrapped = false;
            for (std::size_t c = 0; c < target.size(); ++c) {
                target[c] = at[c] + offsets[i][c];
                if (target[c] < 0 || target[c] >= shape.extent(c)) wrapped = true;
            }
            if (wrapped) row_wrapped[x] = true;
            const std::int64_t col = lex_index(wrap(target, shape), shape);
            row.push_back({col, weights[i]});
        }
        // stable: aliased weights sum in stencil order
        std::stable_sort(row.begin(), row.end(),
                         [](const SparseEntry& a, const SparseEntry& b) {
                             return a.col < b.col;
                         });
        // offsets that wrap onto one column get their weights summed
        std::size_t out = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (out > 0 && row[out - 1].col == row[i].col) {
                row[out - 1].value += row[i].value;
                aliased = true;
            } else {
                row[out++] = row[i];
            }
        }
        row.resize(out);
    }
    return {shape, std::move(rows), std::move(row_wrapped), aliased};
}

FieldState apply(const EvolutionOperator& op, const FieldState& state) {
    require(op.shape() == state.shape, "apply: shape mismatch");
    FieldState out{op.shape(), std::vector<Cx>(op.volume(), Cx{})};
    for (std::int64_t x = 0; x < op.volume(); ++x) {
        Cx acc{};
        for (const SparseEntry& entry : op.row(x))
            acc += entry.value * state.amplitudes[entry.col];
        out.amplitudes[x] = acc;
    }
    return out;
}

EvolutionOperator translation_operator(const LatticeShape& shape, const Offset& offset,
                                       Cx phase) {
    require(static_cast<std::int64_t>(offset.size()) == shape.dim(),
            "translation_operator: dimension mismatch");
    require(std::fabs(std::abs(phase) - 1.0) <= kModulusSlack,
            "translation_operator: phase must have modulus 1");
    const std::int64_t volume = shape.volume();
    std::vector<std::vector<SparseEntry>> rows(volume);
    std::vector<bool> row_wrapped(volume, false);
    Offset target(shape.dim());
    for (std::int64_t x = 0; x < volume; ++x) {
        const Coord at = coord_of(x, shape);
        bool wrapped = false;
        for (std::size_t c = 0; c < target.size(); ++c) {
            target[c] = at[c] + offset[c];
            if (target[c] < 0 || target[c] >= shape.extent(c)) wrapped = true;
        }
        row_wrapped[x] = wrapped;
        rows[x] = {{lex_index(wrap(target, shape), shape), phase}};
    }
    return {shape, std::move(rows), std::move(row_wrapped), false};
}

std::int64_t bandwidth_K(const LatticeShape& shape) {
    std::int64_t k = 1;
    std::int64_t prod = 1;
    for (std::size_t i = shape.dims().size(); i-- > 1;) {
        prod *= shape.extent(i);
        k += prod;
    }
    return k;
}

bool size_condition(const LatticeShape& shape, std::int64_t r) {
    if (r < 0) throw std::invalid_argument("size_condition: r must be >= 0");
    return 1 + 4 * bandwidth_K(shape) * r <= shape.volume();
}

std::int64_t measured_bandwidth(const EvolutionOperator& op, bool include_wrapping_rows) {
    std::int64_t band = 0;
    for (std::int64_t x = 0; x < op.volume(); ++x) {
        if (!include_wrapping_rows && op.row_wrapped(x)) continue;
        for (const SparseEntry& entry : op.row(x))
            if (entry.value != Cx{})
                band = std::max<std::int64_t>(band, std::llabs(x - entry.col));
    }
    return band;
}

EvolutionOperator compose(const EvolutionOperator& a, const EvolutionOperator& b) {
    require(a.shape() == b.shape(), "compose: shape mismatch");
    const std::int64_t volume = a.volume();
    std::vector<std::vector<SparseEntry>> rows(volume);
    for (std::int64_t x = 0; x < volume; ++x) {
        std::map<std::int64_t, Cx> acc;
        for (const SparseEntry& left : a.row(x))
            for (const SparseEntry& right : b.row(left.col))
                acc[right.col] += left.value * right.value;
        auto& row = rows[x];
        row.reserve(acc.size());
        for (const auto& [col, value] : acc)
            if (value != Cx{}) row.push_back({col, value}); // exact cancellations drop out
    }
    return {a.shape(), std::move(rows), std::vector<bool>(volume, false), false};
}

EvolutionOperator adjoint(const EvolutionOperator& op) {
    const std::int64_t volume = op.volume();
    std::vector<std::vector<SparseEntry>> rows(volume);
    for (std::int64_t x = 0; x < volume; ++x)
        for (const SparseEntry& entry : op.row(x))
            rows[entry.col].push_back({x, std::conj(entry.value)});
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return {op.shape(), std::move(rows), std::vector<bool>(volume, false), false};
}

namespace {

// Walk two sorted rows in lockstep, treating absent columns as zero.
template <typename Visit>
void visit_union(const std::vector<SparseEntry>& a, const std::vector<SparseEntry>& b,
                 Visit&& visit) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            visit(a[i].value, Cx{});
            ++i;
        } else if (i == a.size() || b[j].col < a[i].col) {
            visit(Cx{}, b[j].value);
            ++j;
        } else {
            visit(a[i].value, b[j].value);
            ++i;
            ++j;
        }
    }
}

} // namespace

bool exact_equal(const EvolutionOperator& a, const EvolutionOperator& b) {
    if (!(a.shape() == b.shape())) return false;
    bool equal = true;
    for (std::int64_t x = 0; x < a.volume() && equal; ++x)
        visit_union(a.row(x), b.row(x), [&](Cx u, Cx v) {
            if (u != v) equal = false;
        });
    return equal;
}

double max_entry_difference(const EvolutionOperator& a, const EvolutionOperator& b) {
    require(a.shape() == b.shape(), "max_entry_difference: shape mismatch");
    double max = 0.0;
    for (std::int64_t x = 0; x < a.volume(); ++x)
        visit_union(a.row(x), b.row(x), [&](Cx u, Cx v) {
            max = std::max(max, std::abs(u - v));
        });
    return max;
}

} // namespace sqca
