#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fax/hitting_set.hpp"
#include "fax/inclusion.hpp"

namespace fax {

enum class Decision { Accept, Reject };

inline const char* to_string(Decision d) { return d == Decision::Accept ? "accept" : "reject"; }

struct EnumOptions {
    /// Target abductive explanations (duals are contrastive) when true,
    /// the reverse when false. Both modes end with the same complete sets.
    bool target_axp = true;
    /// Preload the dual collection with every singleton contrastive
    /// explanation. Only meaningful when targeting abductive explanations;
    /// ignored otherwise.
    bool warm_start = false;
    /// Draw candidates with globally minimum cardinality, so the first
    /// target found is the smallest possible.
    bool minimum_hs = false;
    /// Cooperative wall-clock budget, checked between iterations; on
    /// expiry the partial report is flagged incomplete.
    std::optional<std::chrono::milliseconds> time_budget;
    /// Node cap per inclusion query.
    std::optional<std::uint64_t> node_budget;
    /// State cap when a rejected-word query forces determinization.
    std::size_t determinize_cap = kDefaultDeterminizeCap;
};

struct RunStats {
    std::uint64_t iterations = 0;
    std::uint64_t inclusion_checks = 0;
    double time_ms = 0.0;
    bool complete = true;
};

/// Result of an explanation run: the complete (or budget-truncated) sets of
/// abductive and contrastive explanations, the per-position attribution, and
/// run statistics. Immutable once returned.
struct ExplanationReport {
    ExplanationReport(Word w, Decision d, Bounds b)
        : word(std::move(w)), decision(d), bounds(b) {}

    Word word;
    Decision decision;
    Bounds bounds;
    std::vector<IndexSet> axps;
    std::vector<IndexSet> cxps;
    std::map<std::size_t, double> ffa;
    RunStats stats;
    /// Hitting-set candidates in the order they were generated.
    std::vector<IndexSet> candidates;
};

/// Per-position share of abductive explanations: value(i) = |{X in axps :
/// i in X}| / |axps|. Positions appearing in no explanation are omitted.
inline std::map<std::size_t, double> compute_ffa(const std::vector<IndexSet>& axps,
                                                 std::size_t n) {
    if (axps.empty())
        throw EmptyAttributionError("attribution requires at least one abductive explanation");
    std::map<std::size_t, std::size_t> counts;
    for (const IndexSet& x : axps) {
        for (std::size_t p : x) {
            if (p < 1 || p > n) throw FormatError("explanation position outside 1..n");
            ++counts[p];
        }
    }
    std::map<std::size_t, double> out;
    for (const auto& [p, c] : counts)
        out[p] = static_cast<double>(c) / static_cast<double>(axps.size());
    return out;
}

/// Shrinks a weak abductive candidate to a subset-minimal one: positions of
/// `x` are freed one at a time in ascending order and kept freed whenever
/// the pattern stays included in the checker's language.
inline IndexSet extract_axp_with(InclusionChecker& checker, const IndexSet& x, const Word& w,
                                 Bounds b) {
    ChainPattern pattern = build_axp_pattern(x, w, b);
    if (!checker.check(pattern).included())
        throw NotWeakAxpError("candidate is not a weak abductive explanation");
    IndexSet result = x;
    for (std::size_t i : x) {
        pattern.toggle(i, true);
        if (checker.check(pattern).included()) {
            result.erase(i);
        } else {
            pattern.toggle(i, false);
        }
    }
    return result;
}

/// Shrinks a freed-position candidate to a subset-minimal contrastive
/// explanation, or reports that no counterexample exists at all (nullopt).
/// Positions are re-fixed one at a time in ascending order and left fixed
/// whenever a counterexample survives.
inline std::optional<IndexSet> extract_cxp_with(InclusionChecker& checker, const IndexSet& y,
                                                const Word& w, Bounds b) {
    ChainPattern pattern = build_cxp_pattern(y, w, b);
    if (checker.check(pattern).included()) return std::nullopt;
    IndexSet result = y;
    for (std::size_t i : y) {
        pattern.toggle(i, false);
        if (!checker.check(pattern).included()) {
            result.erase(i);
        } else {
            pattern.toggle(i, true);
        }
    }
    return result;
}

/// All singleton contrastive explanations, ascending.
inline std::vector<IndexSet> singleton_cxps_with(InclusionChecker& checker, const Word& w,
                                                 Bounds b) {
    std::vector<IndexSet> out;
    ChainPattern pattern = build_cxp_pattern(IndexSet{}, w, b);
    for (std::size_t i = 1; i <= w.size(); ++i) {
        pattern.toggle(i, true);
        if (!checker.check(pattern).included()) out.push_back(IndexSet{i});
        pattern.toggle(i, false);
    }
    return out;
}

inline IndexSet extract_axp(const IndexSet& x, const Automaton& a, const Word& w, Bounds b) {
    InclusionChecker checker(a);
    return extract_axp_with(checker, x, w, b);
}

inline std::optional<IndexSet> extract_cxp(const IndexSet& y, const Automaton& a, const Word& w,
                                           Bounds b) {
    InclusionChecker checker(a);
    return extract_cxp_with(checker, y, w, b);
}

inline std::vector<IndexSet> singleton_cxps(const Automaton& a, const Word& w, Bounds b) {
    InclusionChecker checker(a);
    return singleton_cxps_with(checker, w, b);
}

/// Exhaustive enumeration of all abductive and contrastive explanations for
/// a word the automaton accepts, via minimal-hitting-set duality: candidates
/// come from the hitting-set engine over the duals found so far; each is
/// either confirmed as a target (and blocked) or refuted, in which case a
/// dual is extracted from its complement and added to the sets to hit. The
/// loop ends when no admissible candidate remains, at which point both
/// collections are complete; iterations = |axps| + |cxps| + 1 (without warm
/// start).
inline ExplanationReport enumerate_explanations(const Automaton& a, const Word& w, Bounds b,
                                                const EnumOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    InclusionOptions inclusion_options;
    if (opts.node_budget) inclusion_options.node_budget = *opts.node_budget;
    InclusionChecker checker(a, inclusion_options);

    ExplanationReport report(w, Decision::Accept, b);
    const std::size_t n = w.size();
    HittingSetProblem problem(n);
    std::vector<IndexSet> targets;
    std::vector<IndexSet> duals;
    bool exhausted = false;

    auto out_of_time = [&]() {
        return opts.time_budget && std::chrono::steady_clock::now() - t0 >= *opts.time_budget;
    };

    try {
        if (opts.warm_start && opts.target_axp) {
            ChainPattern pattern = build_cxp_pattern(IndexSet{}, w, b);
            for (std::size_t i = 1; i <= n && !out_of_time(); ++i) {
                pattern.toggle(i, true);
                if (!checker.check(pattern).included()) {
                    IndexSet single{i};
                    duals.push_back(single);
                    problem.add_set_to_hit(single);
                }
                pattern.toggle(i, false);
            }
        }

        while (true) {
            ++report.stats.iterations;
            if (out_of_time()) {
                report.stats.complete = false;
                break;
            }
            std::optional<IndexSet> mu =
                exhausted ? std::nullopt
                          : (opts.minimum_hs ? problem.next_minimum() : problem.next_minimal());
            if (!mu) break;
            report.candidates.push_back(*mu);

            ChainPattern pattern =
                opts.target_axp ? build_axp_pattern(*mu, w, b) : build_cxp_pattern(*mu, w, b);
            const bool included = checker.check(pattern).included();
            const bool is_target = opts.target_axp ? included : !included;
            if (is_target) {
                targets.push_back(*mu);
                problem.block_upset(*mu);
                continue;
            }
            IndexSet rest = mu->complement(n);
            if (opts.target_axp) {
                std::optional<IndexSet> nu = extract_cxp_with(checker, rest, w, b);
                if (!nu)
                    throw Error("refuted abductive candidate produced no contrastive dual");
                duals.push_back(*nu);
                problem.add_set_to_hit(*nu);
            } else {
                IndexSet nu = extract_axp_with(checker, rest, w, b);
                duals.push_back(nu);
                if (nu.empty()) {
                    // The empty abductive explanation: nothing can be hit
                    // any more, so the next candidate query yields none.
                    exhausted = true;
                } else {
                    problem.add_set_to_hit(nu);
                }
            }
        }
    } catch (const BudgetExceededError&) {
        report.stats.complete = false;
    }

    report.axps = opts.target_axp ? std::move(targets) : std::move(duals);
    report.cxps = opts.target_axp ? std::move(duals) : std::move(targets);
    if (!report.axps.empty()) report.ffa = compute_ffa(report.axps, n);
    report.stats.inclusion_checks = checker.checks_run();
    report.stats.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// Explains the automaton's decision on `w`. Accepted words are enumerated
/// against `a` directly; rejected words against the complement (after
/// determinizing when needed), since explaining rejection by `a` is
/// explaining acceptance by the complement. The report records the original
/// decision.
inline ExplanationReport explain(const Automaton& a, const Word& w, Bounds b,
                                 const EnumOptions& opts = {}) {
    if (a.accepts(w)) {
        ExplanationReport report = enumerate_explanations(a, w, b, opts);
        report.decision = Decision::Accept;
        return report;
    }
    const Automaton det = a.is_deterministic() ? a : determinize(a, opts.determinize_cap);
    ExplanationReport report = enumerate_explanations(complement(det), w, b, opts);
    report.decision = Decision::Reject;
    return report;
}

}  // namespace fax
