#include "sqca/nogo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqca/rng.hpp"

namespace sqca {

namespace {

// First stencil position whose weight modulus exceeds tol, or nullopt.
std::optional<std::size_t> first_nonzero(const RuleWeights& rule, double tol) {
    for (std::size_t i = 0; i < rule.weights().size(); ++i)
        if (std::abs(rule.weights()[i]) > tol) return i;
    return std::nullopt;
}

Offset offset_difference(const Offset& a, const Offset& b) {
    Offset delta(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) delta[c] = a[c] - b[c];
    return delta;
}

} // namespace

NogoVerdict classify(const RuleWeights& rule, double tol, bool strict) {
    if (rule.stencil().size() == 0) throw std::invalid_argument("classify: empty stencil");
    if (tol <= 0.0) throw std::invalid_argument("classify: tol must be positive");

    const auto k = first_nonzero(rule, tol);
    if (!k) return AllZero{};

    const auto& offsets = rule.stencil().offsets();
    // Slide the second neighborhood down from the far end: each condition
    // C(e_j - e_k) has a singleton overlap of still-live weights, so a pass
    // forces w_j to vanish.  Checked in the proof's order, j = |E|..k+1.
    for (std::size_t j = offsets.size(); j-- > *k + 1;) {
        const Offset delta = offset_difference(offsets[j], offsets[*k]);
        const Cx value = condition_value(rule, delta);
        if (std::abs(value) > tol) return ConditionViolation{delta, value};
    }
    const Offset zero(rule.stencil().dim(), 0);
    const Cx unit_residual = condition_value(rule, zero) - 1.0;
    if (std::abs(unit_residual) > tol) return ConditionViolation{zero, unit_residual};

    if (strict) {
        const UnitarityReport report = local_conditions(rule, tol);
        if (!report.passed) {
            // most informative offender: the max-modulus residual
            const auto worst = std::max_element(
                report.residuals.begin(), report.residuals.end(),
                [](const auto& a, const auto& b) {
                    return std::abs(a.second) < std::abs(b.second);
                });
            return ConditionViolation{worst->first, worst->second};
        }
    }
    return TranslationPhase{offsets[*k], rule.weights()[*k]};
}

EliminationTrace elimination_trace(const RuleWeights& rule, double tol) {
    if (rule.stencil().size() == 0)
        throw std::invalid_argument("elimination_trace: empty stencil");
    const auto k = first_nonzero(rule, tol);
    if (!k) throw std::invalid_argument("elimination_trace: all-zero rule");

    const auto& offsets = rule.stencil().offsets();
    EliminationTrace trace;
    trace.pivot = *k + 1;
    trace.pivot_offset = offsets[*k];
    trace.pivot_weight = rule.weights()[*k];

    for (std::size_t j = offsets.size(); j-- > *k + 1;) {
        const Offset delta = offset_difference(offsets[j], offsets[*k]);
        const Cx value = condition_value(rule, delta);
        const bool ok = std::abs(value) <= tol;
        trace.steps.push_back({TraceStep::Kind::eliminate, delta, j + 1, *k + 1, j + 1,
                               *k + 1, value, ok});
        if (!ok) return trace; // stop at the first violated condition
    }

    const Offset zero(rule.stencil().dim(), 0);
    const Cx unit = condition_value(rule, zero);
    const bool ok = std::abs(unit - 1.0) <= tol;
    trace.steps.push_back(
        {TraceStep::Kind::conclude, zero, *k + 1, *k + 1, *k + 1, *k + 1, unit, ok});
    trace.completed = ok;
    return trace;
}

namespace {

// Precomputed residual machinery: for each displacement delta, the index
// pairs (i, j) with e_i - e_j = delta contribute w_i * conj(w_j) to C(delta).
struct ConditionTable {
    struct Term {
        std::size_t i, j;
    };
    struct Row {
        std::vector<Term> terms;
        bool is_zero_delta;
    };
    std::vector<Row> rows;

    explicit ConditionTable(const Stencil& stencil) {
        const Offset zero(stencil.dim(), 0);
        for (const Offset& delta : displacement_set(stencil)) {
            Row row;
            row.is_zero_delta = delta == zero;
            Offset shifted(delta.size());
            for (std::size_t i = 0; i < stencil.size(); ++i) {
                for (std::size_t c = 0; c < delta.size(); ++c)
                    shifted[c] = stencil.offsets()[i][c] - delta[c];
                if (const auto j = stencil.index_of(shifted))
                    row.terms.push_back({i, *j});
            }
            rows.push_back(std::move(row));
        }
    }

    // Sum of squared condition-residual moduli.
    double objective(const std::vector<Cx>& weights) const {
        double sum = 0.0;
        for (const Row& row : rows) {
            Cx value{};
            for (const Term& term : row.terms)
                value += weights[term.i] * std::conj(weights[term.j]);
            if (row.is_zero_delta) value -= 1.0;
            sum += std::norm(value);
        }
        return sum;
    }

    double max_residual(const std::vector<Cx>& weights) const {
        double max = 0.0;
        for (const Row& row : rows) {
            Cx value{};
            for (const Term& term : row.terms)
                value += weights[term.i] * std::conj(weights[term.j]);
            if (row.is_zero_delta) value -= 1.0;
            max = std::max(max, std::abs(value));
        }
        return max;
    }
};

// Compass coordinate descent over (Re w_0, Im w_0, Re w_1, ...): walk each
// coordinate greedily at the current step size; when a whole sweep improves
// the objective by less than 1e-14, halve the step.  Everything is fixed
// order and pure double arithmetic, so runs reproduce bit for bit.
void coordinate_descent(const ConditionTable& table, std::vector<Cx>& weights) {
    constexpr double kImprovement = 1e-14;
    constexpr double kMinStep = 1e-12;
    constexpr int kMaxSweeps = 10000;
    constexpr int kMaxMovesPerCoordinate = 1000;

    const std::size_t n = weights.size();
    double step = 0.25;
    double current = table.objective(weights);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double sweep_start = current;
        for (std::size_t c = 0; c < 2 * n; ++c) {
            Cx& w = weights[c / 2];
            const bool real_part = (c % 2) == 0;
            for (int move = 0; move < kMaxMovesPerCoordinate; ++move) {
                const double base = real_part ? w.real() : w.imag();
                double best = current;
                double best_value = base;
                for (const double candidate : {base + step, base - step}) {
                    if (real_part)
                        w.real(candidate);
                    else
                        w.imag(candidate);
                    const double f = table.objective(weights);
                    if (f < best) {
                        best = f;
                        best_value = candidate;
                    }
                }
                if (real_part)
                    w.real(best_value);
                else
                    w.imag(best_value);
                if (best >= current) break;
                current = best;
            }
        }
        if (sweep_start - current < kImprovement) {
            if (step <= kMinStep) break;
            step *= 0.5;
        }
    }
}

} // namespace

std::vector<OraclePoint> random_search_oracle(const Stencil& stencil, std::uint64_t seed,
                                              std::int64_t restarts) {
    if (stencil.size() == 0)
        throw std::invalid_argument("random_search_oracle: empty stencil");
    if (restarts < 0)
        throw std::invalid_argument("random_search_oracle: restarts must be >= 0");

    const ConditionTable table(stencil);
    SplitMix64 root(seed);
    std::vector<OraclePoint> points;
    points.reserve(restarts);
    for (std::int64_t r = 0; r < restarts; ++r) {
        SplitMix64 stream = root.split();
        std::vector<Cx> weights(stencil.size());
        for (Cx& w : weights) w = stream.next_in_unit_disc();
        coordinate_descent(table, weights);
        const double residual = table.max_residual(weights);
        points.push_back({std::move(weights), residual});
    }
    return points;
}

std::vector<OraclePoint> exhaustive_grid_oracle(const Stencil& stencil,
                                                const std::vector<double>& moduli_grid,
                                                std::int64_t phase_count) {
    constexpr double kGridTol = 1e-2;
    if (stencil.size() > 3)
        throw std::invalid_argument(
            "exhaustive_grid_oracle: refused, more than 3 offsets");
    if (moduli_grid.empty())
        throw std::invalid_argument("exhaustive_grid_oracle: empty moduli grid");
    if (phase_count < 1)
        throw std::invalid_argument("exhaustive_grid_oracle: phase count must be >= 1");

    const ConditionTable table(stencil);
    const std::size_t n = stencil.size();
    std::vector<OraclePoint> survivors;
    std::vector<Cx> weights(n);

    std::vector<std::size_t> moduli_index(n, 0);
    for (;;) {
        // phases enumerated only where the modulus is nonzero, so a zero
        // weight is a single grid point rather than phase_count duplicates
        std::vector<std::size_t> live;
        for (std::size_t i = 0; i < n; ++i) {
            if (moduli_grid[moduli_index[i]] == 0.0)
                weights[i] = Cx{};
            else
                live.push_back(i);
        }
        std::vector<std::int64_t> phase_index(live.size(), 0);
        for (;;) {
            for (std::size_t l = 0; l < live.size(); ++l) {
                const double modulus = moduli_grid[moduli_index[live[l]]];
                const double angle =
                    2.0 * std::numbers::pi * static_cast<double>(phase_index[l]) /
                    static_cast<double>(phase_count);
                weights[live[l]] = Cx{modulus * std::cos(angle), modulus * std::sin(angle)};
            }
            const double residual = table.max_residual(weights);
            if (residual <= kGridTol) survivors.push_back({weights, residual});

            bool exhausted = live.empty();
            std::size_t l = live.size();
            while (l-- > 0) {
                if (++phase_index[l] < phase_count) break;
                phase_index[l] = 0;
                if (l == 0) exhausted = true;
            }
            if (exhausted) break;
        }

        std::size_t i = n;
        while (i-- > 0) {
            if (++moduli_index[i] < moduli_grid.size()) break;
            moduli_index[i] = 0;
            if (i == 0) return survivors;
        }
    }
}

} // namespace sqca
