// Command-line front end: unitarity checks, no-go classification, state
// simulation, oracle searches, sum-over-histories reports, and partitioned
// evolution.  Every command is deterministic given its flags; diagnostics go
// to stderr, results to stdout or --out.  Exit codes: 0 pass, 1 mathematical
// violation, 2 input/usage error.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "sqca/format.hpp"
#include "sqca/histories.hpp"
#include "sqca/nogo.hpp"
#include "sqca/partitioned.hpp"
#include "sqca/rule_io.hpp"
#include "sqca/unitarity.hpp"

namespace {

using namespace sqca;

constexpr double kNearSolutionResidual = 1e-8;
constexpr double kNonzeroWeight = 1e-4;

Stencil parse_stencil_spec(const std::string& spec) {
    if (spec == "tri") return triangular_stencil();
    if (spec.rfind("box:", 0) == 0) {
        const std::string rest = spec.substr(4);
        const std::size_t cross = rest.find('x');
        if (cross != std::string::npos) {
            const std::int64_t d = std::stoll(rest.substr(0, cross));
            const std::int64_t r = std::stoll(rest.substr(cross + 1));
            return box_stencil(d, r);
        }
    }
    throw std::invalid_argument("bad stencil spec \"" + spec +
                                "\" (expected box:<d>x<r> or tri)");
}

std::int64_t parse_initial_spec(const std::string& spec) {
    if (spec.rfind("delta:", 0) == 0) return std::stoll(spec.substr(6));
    throw std::invalid_argument("bad initial state \"" + spec +
                                "\" (expected delta:<cell>)");
}

TimeCondition parse_condition_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad condition \"" + spec +
                                    "\" (expected t:cell,cell,...)");
    TimeCondition condition;
    condition.time = std::stoll(spec.substr(0, colon));
    std::string rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        condition.cells.push_back(std::stoll(rest.substr(0, comma)));
        if (comma == std::string::npos) break;
        rest = rest.substr(comma + 1);
    }
    return condition;
}

BlockRule parse_block_spec(const std::string& spec) {
    std::vector<double> values;
    std::string rest = spec;
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        values.push_back(std::stod(rest.substr(0, comma)));
        if (comma == std::string::npos) break;
        rest = rest.substr(comma + 1);
    }
    if (values.size() != 8)
        throw std::invalid_argument(
            "bad block \"" + spec +
            "\" (expected 8 comma-separated numbers: re,im per entry a,b,c,d)");
    return {{{{Cx{values[0], values[1]}, Cx{values[2], values[3]}},
              {Cx{values[4], values[5]}, Cx{values[6], values[7]}}}}};
}

void write_csv(std::ostream& out, const std::vector<FieldState>& timeline) {
    out << "t,cell,re,im,prob\n";
    for (std::size_t t = 0; t < timeline.size(); ++t)
        for (std::int64_t cell = 0; cell < timeline[t].shape.volume(); ++cell) {
            const Cx a = timeline[t].amplitudes[cell];
            out << t << ',' << cell << ',' << format_double(a.real()) << ','
                << format_double(a.imag()) << ',' << format_double(std::norm(a))
                << '\n';
        }
}

void write_csv_to(const std::string& path, const std::vector<FieldState>& timeline) {
    if (path.empty()) {
        write_csv(std::cout, timeline);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write to " + path);
    write_csv(out, timeline);
}

int run_check(const std::string& path, double tol) {
    const RuleFile file = load_rule_file(path);
    const UnitarityReport report = local_conditions(file.rule, tol);

    std::cout << "local conditions: tol=" << format_double(tol) << "\n";
    for (const auto& [delta, residual] : report.residuals)
        std::cout << "delta=" << format_vector(delta)
                  << " residual=" << format_complex(residual)
                  << " |residual|=" << format_double(std::abs(residual)) << "\n";
    std::cout << "max |residual| = " << format_double(report.max_abs_residual) << "\n";
    std::cout << "local: " << (report.passed ? "PASS" : "FAIL") << "\n";

    bool ok = report.passed;
    if (aliasing_free(file.shape, file.rule.stencil())) {
        const GlobalCheckResult global =
            global_check(build_operator(file.shape, file.rule), tol);
        std::cout << "aliasing-free: yes\n";
        std::cout << "global: " << (global.passed ? "PASS" : "FAIL")
                  << " max|UU+-I| = " << format_double(global.max_deviation) << "\n";
        ok = ok && global.passed;
    } else {
        std::cout << "aliasing-free: no (global check skipped)\n";
    }
    return ok ? 0 : 1;
}

int run_classify(const std::string& path, double tol, bool trace) {
    const RuleFile file = load_rule_file(path);
    const NogoVerdict verdict = classify(file.rule, tol);

    if (trace && !std::holds_alternative<AllZero>(verdict)) {
        const EliminationTrace steps = elimination_trace(file.rule, tol);
        std::cout << "trace: pivot position " << steps.pivot << ", offset "
                  << format_vector(steps.pivot_offset) << ", weight "
                  << format_complex(steps.pivot_weight) << "\n";
        for (const TraceStep& step : steps.steps) {
            if (step.kind == TraceStep::Kind::eliminate)
                std::cout << "eliminate position " << step.position
                          << " via delta=" << format_vector(step.delta)
                          << " overlap(" << step.overlap_upper << ","
                          << step.overlap_lower
                          << "): C=" << format_complex(step.condition)
                          << (step.satisfied ? " ok" : " VIOLATED") << "\n";
            else
                std::cout << "conclude |w[" << step.position
                          << "]| = 1: C(0)=" << format_complex(step.condition)
                          << (step.satisfied ? " ok" : " VIOLATED") << "\n";
        }
    }

    if (const auto* tp = std::get_if<TranslationPhase>(&verdict)) {
        std::cout << "TranslationPhase offset=" << format_vector(tp->offset)
                  << " phase=" << format_complex(tp->phase) << "\n";
        return 0;
    }
    if (std::holds_alternative<AllZero>(verdict)) {
        std::cout << "AllZero\n";
        return 0;
    }
    const auto& violation = std::get<ConditionViolation>(verdict);
    std::cout << "Violation delta=" << format_vector(violation.delta)
              << " residual=" << format_complex(violation.residual) << "\n";
    return 1;
}

int run_simulate(const std::string& path, std::int64_t steps,
                 const std::string& initial, const std::string& out) {
    if (steps < 0) throw std::invalid_argument("--steps must be >= 0");
    const RuleFile file = load_rule_file(path);
    const EvolutionOperator op = build_operator(file.shape, file.rule);

    std::vector<FieldState> timeline;
    timeline.push_back(delta_state(file.shape, parse_initial_spec(initial)));
    for (std::int64_t t = 0; t < steps; ++t)
        timeline.push_back(apply(op, timeline.back()));
    write_csv_to(out, timeline);
    return 0;
}

int run_nogo_search(const std::string& stencil_spec, std::int64_t restarts,
                    std::uint64_t seed) {
    const Stencil stencil = parse_stencil_spec(stencil_spec);
    const auto points = random_search_oracle(stencil, seed, restarts);

    std::int64_t multi = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t nonzero = 0;
        for (const Cx& w : points[i].weights)
            if (std::abs(w) > kNonzeroWeight) ++nonzero;
        std::cout << "restart " << i
                  << ": residual=" << format_double(points[i].residual)
                  << " nonzero=" << nonzero << "\n";
        if (points[i].residual < kNearSolutionResidual && nonzero > 1) ++multi;
    }
    std::cout << "multi-nonzero near-solutions: " << multi << "\n";
    return multi == 0 ? 0 : 1;
}

int run_histories(const std::string& path, std::int64_t source,
                  std::optional<std::int64_t> steps, std::optional<std::int64_t> t1,
                  std::optional<std::int64_t> t2,
                  const std::vector<std::string>& condition_specs) {
    const RuleFile file = load_rule_file(path);
    HistorySetSpec spec;
    spec.sources = {source};
    for (const std::string& text : condition_specs)
        spec.conditions.push_back(parse_condition_spec(text));

    if (t1.has_value() != t2.has_value())
        throw std::invalid_argument("--t1 and --t2 must be given together");
    if (!t1 && !steps)
        throw std::invalid_argument("need --steps or --t1/--t2");

    if (t1) {
        spec.truncation = *t1;
        const double first = set_probability(file.shape, file.rule, spec);
        std::cout << "|S|(T=" << *t1 << ") = " << format_double(first) << "\n";
        spec.truncation = *t2;
        const double second = set_probability(file.shape, file.rule, spec);
        std::cout << "|S|(T=" << *t2 << ") = " << format_double(second) << "\n";
        spec.truncation = 0;
        std::cout << "gap = "
                  << format_double(
                         truncation_invariance_gap(file.shape, file.rule, spec, *t1, *t2))
                  << "\n";
    } else {
        spec.truncation = *steps;
        std::cout << "|S|(T=" << *steps << ") = "
                  << format_double(set_probability(file.shape, file.rule, spec)) << "\n";
    }
    return 0;
}

int run_partitioned(std::int64_t n, std::optional<double> theta,
                    const std::string& block_spec, std::int64_t steps,
                    const std::string& out) {
    if (steps < 0) throw std::invalid_argument("--steps must be >= 0");
    if (theta.has_value() == !block_spec.empty())
        throw std::invalid_argument("give exactly one of --theta or --block");
    const BlockRule block =
        theta ? rotation_block(*theta) : parse_block_spec(block_spec);
    const TwoPhaseOperator op = build_partitioned(n, block);

    std::vector<FieldState> timeline;
    timeline.push_back(delta_state(op.shape, 0));
    for (std::int64_t t = 0; t < steps; ++t)
        timeline.push_back(step(op, timeline.back()));
    write_csv_to(out, timeline);

    const GlobalCheckResult unitary = global_check(op.composite, 1e-12);
    const SubgroupInvarianceReport report = subgroup_invariance_report(op);
    std::cout << "composite unitary: " << (unitary.passed ? "PASS" : "FAIL")
              << " max|UU+-I| = " << format_double(unitary.max_deviation) << "\n";
    std::cout << "commutes_with_shift2: " << (report.commutes_with_shift2 ? "yes" : "no")
              << " (max entry " << format_double(report.shift2_commutator_max) << ")\n";
    std::cout << "shift1 commutator max entry = "
              << format_double(report.shift1_commutator_max) << "\n";
    std::cout << "final norm = " << format_double(l2_norm(timeline.back())) << "\n";
    return unitary.passed && report.commutes_with_shift2 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scalar cellular automaton unitarity toolkit"};
    app.require_subcommand(1);

    std::string rule_path, out_path, initial = "delta:0";
    std::string stencil_spec, block_spec;
    std::vector<std::string> condition_specs;
    double tol = kDefaultTol;
    bool trace = false;
    std::int64_t steps = 0, restarts = 100, source = 0, n = 16;
    std::uint64_t seed = 42;
    std::optional<std::int64_t> hist_steps, t1, t2;
    std::optional<double> theta;

    CLI::App* check = app.add_subcommand("check", "verify the unitarity conditions");
    check->add_option("rule", rule_path, "rule file (JSON)")->required();
    check->add_option("--tol", tol, "residual tolerance");

    CLI::App* classify = app.add_subcommand("classify", "no-go classification");
    classify->add_option("rule", rule_path, "rule file (JSON)")->required();
    classify->add_option("--tol", tol, "classification tolerance");
    classify->add_flag("--trace", trace, "print the elimination steps");

    CLI::App* simulate = app.add_subcommand("simulate", "evolve a state, write CSV");
    simulate->add_option("rule", rule_path, "rule file (JSON)")->required();
    simulate->add_option("--steps", steps, "number of timesteps");
    simulate->add_option("--initial", initial, "initial state, delta:<cell>");
    simulate->add_option("--out", out_path, "CSV output path (default stdout)");

    CLI::App* search = app.add_subcommand("nogo-search", "random-restart oracle");
    search->add_option("--stencil", stencil_spec, "box:<d>x<r> or tri")->required();
    search->add_option("--restarts", restarts, "number of restarts");
    search->add_option("--seed", seed, "random seed");

    CLI::App* histories = app.add_subcommand("histories", "sum-over-histories report");
    histories->add_option("rule", rule_path, "rule file (JSON)")->required();
    histories->add_option("--source", source, "source cell at time 0");
    histories->add_option("--steps", [&](const CLI::results_t& r) {
        hist_steps = std::stoll(r.at(0));
        return true;
    }, "single truncation time");
    histories->add_option("--t1", [&](const CLI::results_t& r) {
        t1 = std::stoll(r.at(0));
        return true;
    }, "first truncation time");
    histories->add_option("--t2", [&](const CLI::results_t& r) {
        t2 = std::stoll(r.at(0));
        return true;
    }, "second truncation time");
    histories->add_option("--condition", condition_specs,
                          "projector constraint t:cell,cell,... (repeatable)");

    CLI::App* partitioned = app.add_subcommand("partitioned", "two-phase evolution");
    partitioned->add_option("--n", n, "even lattice size >= 4");
    partitioned->add_option("--theta", [&](const CLI::results_t& r) {
        theta = std::stod(r.at(0));
        return true;
    }, "rotation block angle");
    partitioned->add_option("--block", block_spec, "8 numbers re,im per entry a,b,c,d");
    partitioned->add_option("--steps", steps, "number of composite steps");
    partitioned->add_option("--out", out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (check->parsed()) return run_check(rule_path, tol);
        if (classify->parsed()) return run_classify(rule_path, tol, trace);
        if (simulate->parsed()) return run_simulate(rule_path, steps, initial, out_path);
        if (search->parsed()) return run_nogo_search(stencil_spec, restarts, seed);
        if (histories->parsed())
            return run_histories(rule_path, source, hist_steps, t1, t2, condition_specs);
        if (partitioned->parsed())
            return run_partitioned(n, theta, block_spec, steps, out_path);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
