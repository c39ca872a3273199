// Acceptance suite: one criterion per function, one pass/fail line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace fax;
using namespace fax::testing;

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CriterionFailure(message);
}

void require_under(double elapsed_s, double limit_s) {
    require(elapsed_s < limit_s, "exceeded the " + std::to_string(limit_s) + " s time limit (" +
                                     std::to_string(elapsed_s) + " s)");
}

std::set<IndexSet> as_set(const std::vector<IndexSet>& sets) {
    return std::set<IndexSet>(sets.begin(), sets.end());
}

std::string show(const std::vector<IndexSet>& sets) {
    std::string out = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? " " : "") + sets[i].str();
    return out + "]";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1: step-by-step enumeration trace, bit-exact -----------------

void criterion_trace() {
    auto start = std::chrono::steady_clock::now();
    EnumOptions opts;
    opts.target_axp = false;
    ExplanationReport report = enumerate_explanations(
        signature_complement(), w(az_alphabet(), "accc"), Bounds::one(), opts);

    std::vector<IndexSet> expected_candidates{IndexSet{}, IndexSet{1}, IndexSet{4},
                                              IndexSet{2, 4}};
    require(report.candidates == expected_candidates,
            "candidate sequence was " + show(report.candidates));
    require(report.axps == std::vector<IndexSet>{IndexSet{1, 4}, IndexSet{1, 2}},
            "axps were " + show(report.axps));
    require(report.cxps == std::vector<IndexSet>{IndexSet{1}, IndexSet{2, 4}},
            "cxps were " + show(report.cxps));
    require(report.stats.iterations == 5, "expected 5 iterations");
    require(report.stats.complete, "report flagged incomplete");
    require_under(seconds_since(start), 1.0);
}

// --- criterion 2: the five-symbol acceptance example -------------------------

void criterion_branching_word() {
    auto start = std::chrono::steady_clock::now();
    ExplanationReport report = explain(branching_dfa(), w(ab_alphabet(), "bbbbb"), Bounds::one());
    require(report.decision == Decision::Accept, "expected an accept decision");
    require(as_set(report.axps) == std::set<IndexSet>{IndexSet{3}, IndexSet{1, 2}},
            "axps were " + show(report.axps));
    require(as_set(report.cxps) == std::set<IndexSet>{IndexSet{1, 3}, IndexSet{2, 3}},
            "cxps were " + show(report.cxps));
    require_under(seconds_since(start), 1.0);
}

// --- criterion 3: widening the replacement interval changes the explanation --

void criterion_interval_widening() {
    auto start = std::chrono::steady_clock::now();
    Word ceccd = w(az_alphabet(), "ceccd");
    Automaton target = signature_complement();

    require(is_included(build_axp_pattern(IndexSet{2}, ceccd, Bounds::one()), target).included(),
            "{2} is not sufficient under single-symbol replacement");
    ExplanationReport narrow = explain(signature_nfa(), ceccd, Bounds::one());
    require(narrow.decision == Decision::Reject, "expected a reject decision");
    require(as_set(narrow.axps).count(IndexSet{2}) == 1, "{2} missing from the 1:1 axps");

    InclusionResult widened =
        is_included(build_axp_pattern(IndexSet{2}, ceccd, Bounds::one_to_inf()), target);
    require(!widened.included(), "{2} pattern unexpectedly stays included under 1:inf");
    require(is_included(build_axp_pattern(IndexSet{2, 3}, ceccd, Bounds::one_to_inf()), target)
                .included(),
            "{2,3} not sufficient under 1:inf");
    ExplanationReport wide = explain(signature_nfa(), ceccd, Bounds::one_to_inf());
    require(as_set(wide.axps).count(IndexSet{2, 3}) == 1, "{2,3} missing from the 1:inf axps");
    require_under(seconds_since(start), 1.0);
}

// --- criterion 4: attribution values, bit-exact ------------------------------

void criterion_attribution() {
    std::map<std::size_t, double> expected{{1, 1.0}, {2, 0.5}, {4, 0.5}};
    require(compute_ffa({IndexSet{1, 2}, IndexSet{1, 4}}, 4) == expected,
            "attribution differs from {1:1.0, 2:0.5, 4:0.5}");
}

// --- criterion 5: nth-symbol-from-the-end family ------------------------------

void criterion_nth_from_end() {
    auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(2027);
    Alphabet ab = ab_alphabet();
    for (std::size_t n = 2; n <= 8; ++n) {
        std::string regex = "(a|b)*a";
        for (std::size_t k = 1; k < n; ++k) regex += "(a|b)";
        Automaton det = determinize(regex_to_nfa(regex, ab));
        require(det.state_count() >= (std::size_t{1} << n),
                "n=" + std::to_string(n) + ": determinized automaton has only " +
                    std::to_string(det.state_count()) + " states");
        for (int round = 0; round < 3; ++round) {
            Word word = random_word(rng, ab, 2 * n);
            ExplanationReport report = explain(det, word, Bounds::one());
            IndexSet expected{word.size() - n + 1};
            require(report.axps == std::vector<IndexSet>{expected},
                    "n=" + std::to_string(n) + ": axps were " + show(report.axps));
            require(report.cxps == std::vector<IndexSet>{expected},
                    "n=" + std::to_string(n) + ": cxps were " + show(report.cxps));
        }
    }
    require_under(seconds_since(start), 10.0);
}

// --- criterion 6: consecutive-symbols family ----------------------------------

void criterion_consecutive_family() {
    auto start = std::chrono::steady_clock::now();
    Alphabet ab = ab_alphabet();
    for (std::size_t n = 2; n <= 5; ++n) {
        std::vector<SymbolId> run(n, ab.id("a"));
        Automaton lang = substring_union_automaton({Word(ab, run)}, ab);
        std::vector<SymbolId> bs(2 * n, ab.id("b"));
        Word word(ab, bs);
        require(!lang.accepts(word), "the all-b word should be rejected");

        ExplanationReport report = explain(lang, word, Bounds::one());
        auto [expected_axps, expected_cxps] = brute_force_explanations(complement(lang), word);
        require(as_set(report.axps) == expected_axps,
                "n=" + std::to_string(n) + ": axps differ from the oracle");
        require(as_set(report.cxps) == expected_cxps,
                "n=" + std::to_string(n) + ": cxps differ from the oracle");
        for (const IndexSet& y : report.cxps)
            require(y.size() == n, "n=" + std::to_string(n) + ": contrastive explanation " +
                                       y.str() + " has the wrong cardinality");
    }
    require_under(seconds_since(start), 30.0);
}

// --- criterion 7: exponential duality family -----------------------------------

void criterion_exponential_family() {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::string> names;
    for (char c = 'a'; c <= 'h'; ++c) names.emplace_back(1, c);
    for (char c = 'A'; c <= 'H'; ++c) names.emplace_back(1, c);
    Alphabet sigma(names);

    const std::string any = "[a-hA-H]";
    auto repeat = [&](std::size_t k) {
        std::string out;
        for (std::size_t i = 0; i < k; ++i) out += any;
        return out;
    };
    std::string regex = "(ab" + repeat(6) + ")|(" + repeat(2) + "cd" + repeat(4) + ")|(" +
                        repeat(4) + "ef" + repeat(2) + ")|(" + repeat(6) + "gh)";
    Automaton lang = regex_to_nfa(regex, sigma);
    Word word = Word::parse(sigma, "ABCDEFGH");
    require(!lang.accepts(word), "the uppercase word should be rejected");

    ExplanationReport report = explain(lang, word, Bounds::one());
    std::set<IndexSet> expected_cxps{IndexSet{1, 2}, IndexSet{3, 4}, IndexSet{5, 6},
                                     IndexSet{7, 8}};
    require(as_set(report.cxps) == expected_cxps, "cxps were " + show(report.cxps));
    require(report.axps.size() == 16, "expected 2^4 = 16 axps, got " +
                                          std::to_string(report.axps.size()));
    require(as_set(report.axps) == brute_minimal_hitting_sets(report.cxps, word.size()),
            "axps are not exactly the minimal hitting sets of the cxps");
    require_under(seconds_since(start), 10.0);
}

// --- criterion 8: randomized property suite -------------------------------------

void criterion_property_suite() {
    auto start = std::chrono::steady_clock::now();
    SplitMix64 rng(811);
    int violations = 0;
    std::ostringstream detail;

    for (int instance = 0; instance < 200; ++instance) {
        std::size_t states = 2 + rng.below(4);        // <= 5
        std::size_t sigma = 1 + rng.below(3);         // <= 3
        std::size_t length = 1 + rng.below(7);        // <= 7
        Automaton a = random_dfa(rng, states, sigma);
        Word word = random_word(rng, a.alphabet(), length);
        Automaton target = a.accepts(word) ? a : complement(a);

        // (a) enumeration equals the exhaustive subset classification.
        auto [expected_axps, expected_cxps] = brute_force_explanations(target, word);
        ExplanationReport base = enumerate_explanations(target, word, Bounds::one());
        if (as_set(base.axps) != expected_axps || as_set(base.cxps) != expected_cxps) {
            ++violations;
            detail << " (a)@" << instance;
            continue;
        }

        // (b) duality in both directions.
        if (!base.cxps.empty()) {
            if (as_set(base.axps) != brute_minimal_hitting_sets(base.cxps, word.size()) ||
                as_set(base.cxps) != brute_minimal_hitting_sets(base.axps, word.size())) {
                ++violations;
                detail << " (b)@" << instance;
            }
        }

        // (c) both target modes and warm start agree.
        EnumOptions cxp_mode;
        cxp_mode.target_axp = false;
        EnumOptions warm;
        warm.warm_start = true;
        for (const EnumOptions& opts : {cxp_mode, warm}) {
            ExplanationReport other = enumerate_explanations(target, word, Bounds::one(), opts);
            if (as_set(other.axps) != as_set(base.axps) ||
                as_set(other.cxps) != as_set(base.cxps)) {
                ++violations;
                detail << " (c)@" << instance;
            }
        }

        // (d) minimum-cardinality mode: the first target is a smallest one.
        EnumOptions minimum;
        minimum.minimum_hs = true;
        ExplanationReport min_report = enumerate_explanations(target, word, Bounds::one(), minimum);
        if (!min_report.axps.empty()) {
            std::size_t smallest = min_report.axps.front().size();
            for (const IndexSet& x : min_report.axps)
                if (x.size() < smallest) {
                    ++violations;
                    detail << " (d)@" << instance;
                    break;
                }
        }

        // (e) the inclusion oracle agrees with brute force.
        IndexSet free;
        for (std::size_t p = 1; p <= word.size(); ++p)
            if (rng.below(2)) free.insert(p);
        ChainPattern narrow(word, free, Bounds::one());
        auto expected_narrow = enumerated_counterexample(narrow, a, word.size());
        InclusionResult got_narrow = is_included(narrow, a);
        if (expected_narrow.has_value() == got_narrow.included()) {
            ++violations;
            detail << " (e)@" << instance;
        } else if (!got_narrow.included()) {
            if (!chain_matches(narrow, *got_narrow.counterexample) ||
                a.accepts(*got_narrow.counterexample) ||
                *got_narrow.counterexample != *expected_narrow) {
                ++violations;
                detail << " (e.witness)@" << instance;
            }
        }
        Bounds wide = rng.below(2) ? Bounds::one_to_inf() : Bounds::zero_to_inf();
        ChainPattern stretchy(word, free, wide);
        auto expected_wide = product_counterexample(stretchy, a);
        InclusionResult got_wide = is_included(stretchy, a);
        if (expected_wide.has_value() == got_wide.included()) {
            ++violations;
            detail << " (e.inf)@" << instance;
        } else if (!got_wide.included()) {
            if (!chain_matches(stretchy, *got_wide.counterexample) ||
                a.accepts(*got_wide.counterexample)) {
                ++violations;
                detail << " (e.inf.witness)@" << instance;
            }
        }
    }
    require(violations == 0,
            std::to_string(violations) + " property violations:" + detail.str());
    require_under(seconds_since(start), 300.0);
}

// --- criterion 9: scalability smoke ----------------------------------------------

void criterion_scalability() {
    CorpusSpec spec;
    spec.word_length = 10;
    spec.word_count = 5;
    spec.alphabet_size = 5;
    spec.seed = 424242;
    CorpusInstance corpus = gen_corpus_automaton(spec);
    const Word& word = corpus.accepted[4];
    require(word.size() == 500, "expected the length-500 accepted word");
    require(corpus.automaton.accepts(word), "accepted word rejected");

    auto start = std::chrono::steady_clock::now();
    IndexSet axp =
        extract_axp(IndexSet::full(word.size()), corpus.automaton, word, Bounds::one());
    double extraction_s = seconds_since(start);
    require(is_included(build_axp_pattern(axp, word, Bounds::one()), corpus.automaton).included(),
            "extracted explanation is not sufficient");
    require_under(extraction_s, 10.0);

    EnumOptions opts;
    opts.time_budget = std::chrono::milliseconds(600'000);
    ExplanationReport report = enumerate_explanations(corpus.automaton, word, Bounds::one(), opts);
    // Complete or a consistent partial: everything reported must verify, and
    // both collections must be antichains.
    InclusionChecker checker(corpus.automaton);
    for (const IndexSet& x : report.axps)
        require(checker.check(build_axp_pattern(x, word, report.bounds)).included(),
                "reported axp " + x.str() + " is not sufficient");
    for (const IndexSet& y : report.cxps)
        require(!checker.check(build_cxp_pattern(y, word, report.bounds)).included(),
                "reported cxp " + y.str() + " admits no counterexample");
    for (const auto& collection : {report.axps, report.cxps})
        for (std::size_t i = 0; i < collection.size(); ++i)
            for (std::size_t j = 0; j < collection.size(); ++j)
                require(i == j || !collection[i].is_subset_of(collection[j]),
                        "reported collection is not an antichain");
}

// --- criterion 10: generator determinism ------------------------------------------

void criterion_determinism() {
    MazeInstance maze_a = gen_maze(12, 14, 1.0 / 3.0, 77);
    MazeInstance maze_b = gen_maze(12, 14, 1.0 / 3.0, 77);
    require(maze_to_text(maze_a) == maze_to_text(maze_b), "maze dumps differ between re-runs");

    CorpusSpec spec;
    spec.word_length = 5;
    spec.word_count = 3;
    spec.alphabet_size = 5;
    spec.seed = 9;
    CorpusInstance corpus_a = gen_corpus_automaton(spec, 0.1);
    CorpusInstance corpus_b = gen_corpus_automaton(spec, 0.1);
    require(write_automaton(corpus_a.automaton) == write_automaton(corpus_b.automaton),
            "corpus automata differ between re-runs");
    require(corpus_a.accepted == corpus_b.accepted && corpus_a.rejected == corpus_b.rejected,
            "corpus test words differ between re-runs");

    require(maze_dimension_sweep().size() == 861, "dimension sweep must enumerate 861 sizes");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria{
        {"step-by-step enumeration trace", criterion_trace},
        {"acceptance example explanation sets", criterion_branching_word},
        {"replacement-interval widening", criterion_interval_widening},
        {"feature attribution values", criterion_attribution},
        {"nth-symbol-from-end family", criterion_nth_from_end},
        {"consecutive-symbols family", criterion_consecutive_family},
        {"exponential duality family", criterion_exponential_family},
        {"randomized property suite", criterion_property_suite},
        {"scalability smoke", criterion_scalability},
        {"generator determinism", criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run();
            std::printf("[PASS] criterion %zu: %s (%.2f s)\n", i + 1, criteria[i].name,
                        seconds_since(start));
        } catch (const std::exception& e) {
            ++failed;
            std::printf("[FAIL] criterion %zu: %s: %s (%.2f s)\n", i + 1, criteria[i].name,
                        e.what(), seconds_since(start));
        }
        std::fflush(stdout);
    }
    return failed;
}
