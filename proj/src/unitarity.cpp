#include "sqca/unitarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sqca {

std::vector<Offset> displacement_set(const Stencil& stencil) {
    if (stencil.size() == 0) throw std::invalid_argument("displacement_set: empty stencil");
    std::set<Offset> deltas;
    Offset delta(stencil.dim());
    for (const Offset& a : stencil.offsets())
        for (const Offset& b : stencil.offsets()) {
            for (std::size_t c = 0; c < delta.size(); ++c) delta[c] = a[c] - b[c];
            deltas.insert(delta);
        }
    return {deltas.begin(), deltas.end()};
}

Cx condition_value(const RuleWeights& rule, const Offset& delta) {
    const Stencil& stencil = rule.stencil();
    if (delta.size() != static_cast<std::size_t>(stencil.dim()))
        throw std::invalid_argument("condition_value: dimension mismatch");
    Cx sum{};
    Offset shifted(delta.size());
    for (std::size_t i = 0; i < stencil.size(); ++i) {
        const Offset& e = stencil.offsets()[i];
        for (std::size_t c = 0; c < delta.size(); ++c) shifted[c] = e[c] - delta[c];
        if (const auto j = stencil.index_of(shifted))
            sum += rule.weights()[i] * std::conj(rule.weights()[*j]);
    }
    return sum;
}

UnitarityReport local_conditions(const RuleWeights& rule, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("local_conditions: tol must be positive");
    UnitarityReport report;
    report.tol = tol;
    const Offset zero(rule.stencil().dim(), 0);
    for (const Offset& delta : displacement_set(rule.stencil())) {
        Cx residual = condition_value(rule, delta);
        if (delta == zero) residual -= 1.0;
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(residual));
        report.residuals.emplace_back(delta, residual);
    }
    report.passed = report.max_abs_residual <= tol;
    return report;
}

GlobalCheckResult global_check(const EvolutionOperator& op, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("global_check: tol must be positive");
    const EvolutionOperator product = compose(op, adjoint(op));
    double max = 0.0;
    for (std::int64_t x = 0; x < product.volume(); ++x) {
        bool saw_diagonal = false;
        for (const SparseEntry& entry : product.row(x)) {
            Cx value = entry.value;
            if (entry.col == x) {
                value -= 1.0;
                saw_diagonal = true;
            }
            max = std::max(max, std::abs(value));
        }
        if (!saw_diagonal) max = std::max(max, 1.0); // structurally missing diagonal
    }
    return {max <= tol, max};
}

bool aliasing_free(const LatticeShape& shape, const Stencil& stencil) {
    if (stencil.dim() != shape.dim())
        throw std::invalid_argument("aliasing_free: dimension mismatch");
    std::set<std::int64_t> wrapped;
    for (const Offset& delta : displacement_set(stencil))
        if (!wrapped.insert(lex_index(wrap(delta, shape), shape)).second) return false;
    return true;
}

} // namespace sqca
