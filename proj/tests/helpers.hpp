#pragma once

#include <optional>
#include <set>
#include <vector>

#include "fax/fax.hpp"

namespace fax::testing {

inline Alphabet ab_alphabet() { return Alphabet({"a", "b"}); }
inline Alphabet az_alphabet() { return Alphabet::from_range('a', 'z'); }

inline Word w(const Alphabet& alphabet, const std::string& text) {
    return Word::parse(alphabet, text);
}

/// Hand-built six-state DFA over {a,b}: reaching the accepting sink needs a
/// `b` as second symbol after an initial `b`, or as third symbol otherwise.
/// Accepts bbbbb. Complete as given.
inline Automaton branching_dfa() {
    Automaton a(ab_alphabet(), 6);
    const SymbolId sa = 0, sb = 1;
    a.mark_initial(0);
    a.mark_accepting(5);
    a.add_transition(0, sa, 1);
    a.add_transition(0, sb, 2);
    a.add_transition(1, SymbolSet::range(sa, sb), 3);
    a.add_transition(2, sa, 3);
    a.add_transition(2, sb, 5);
    a.add_transition(3, sa, 4);
    a.add_transition(3, sb, 5);
    a.add_transition(4, SymbolSet::range(sa, sb), 4);
    a.add_transition(5, SymbolSet::range(sa, sb), 5);
    return a;
}

/// Four-branch signature union over a..z; rejects "accc" and "ceccd".
inline const char* signature_regex() { return "(abcd+)|(ab[c-z]e+)|(bc+da)|(bc+)"; }

inline Automaton signature_nfa() { return regex_to_nfa(signature_regex(), az_alphabet()); }

inline Automaton signature_complement() { return complement(determinize(signature_nfa())); }

// ---------------------------------------------------------------------------
// Independent oracles. These re-decide the library's answers from first
// principles and must not share its search machinery.

/// All words over the alphabet with length <= max_len, in length-then-lex
/// order (matching the library's counterexample tie-breaking).
inline std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<Word> out;
    std::vector<std::vector<SymbolId>> layer{{}};
    out.emplace_back(alphabet, std::vector<SymbolId>{});
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<SymbolId>> next;
        for (const auto& prefix : layer) {
            for (SymbolId s = 0; s < alphabet.size(); ++s) {
                std::vector<SymbolId> word = prefix;
                word.push_back(s);
                out.emplace_back(alphabet, word);
                next.push_back(std::move(word));
            }
        }
        layer = std::move(next);
    }
    return out;
}

/// Dynamic-programming membership test for a chain pattern: can `candidate`
/// be split into one segment per pattern position, fixed positions matching
/// the base symbol exactly and free positions taking any string with length
/// in the bounds?
inline bool chain_matches(const ChainPattern& pattern, const Word& candidate) {
    const std::size_t n = pattern.length();
    const std::size_t m = candidate.size();
    const unsigned lo = pattern.bounds().lower();
    const bool unbounded = pattern.bounds().unbounded();
    const unsigned hi = pattern.bounds().upper();

    std::vector<std::vector<char>> reach(n + 1, std::vector<char>(m + 1, 0));
    reach[0][0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) {
            if (!pattern.is_free(i)) {
                if (j >= 1 && reach[i - 1][j - 1] &&
                    candidate.at(j - 1) == pattern.word().at(i - 1))
                    reach[i][j] = 1;
                continue;
            }
            const std::size_t max_k = unbounded ? j : std::min<std::size_t>(j, hi);
            for (std::size_t k = lo; k <= max_k; ++k) {
                if (reach[i - 1][j - k]) {
                    reach[i][j] = 1;
                    break;
                }
            }
        }
    }
    return reach[n][m] == 1;
}

/// Inclusion by exhaustive enumeration: the first word (length-then-lex) in
/// the pattern language that `a` rejects, if any exists up to max_len.
inline std::optional<Word> enumerated_counterexample(const ChainPattern& pattern,
                                                     const Automaton& a, std::size_t max_len) {
    for (const Word& cand : all_words(a.alphabet(), max_len))
        if (chain_matches(pattern, cand) && !a.accepts(cand)) return cand;
    return std::nullopt;
}

/// Inclusion by the textbook eager route: materialize the chain automaton,
/// determinize both sides, and breadth-first search the explicit product for
/// a pair (chain accepts, automaton rejects).
inline std::optional<Word> product_counterexample(const ChainPattern& pattern,
                                                  const Automaton& a) {
    Automaton chain = determinize(chain_to_automaton(pattern));
    Automaton whole = complete(determinize(a));

    struct Node {
        StateId chain_state;
        StateId aut_state;
    };
    auto key = [&](StateId c, StateId s) { return c * whole.state_count() + s; };
    auto target_on = [](const Automaton& m, StateId s, SymbolId sym) {
        for (const Automaton::Arc& arc : m.arcs_from(s))
            if (arc.symbols.contains(sym)) return arc.dst;
        throw Error("incomplete automaton in product oracle");
    };

    std::vector<Node> nodes;
    std::vector<std::int64_t> parent;
    std::vector<std::int32_t> via;
    std::set<std::size_t> seen;
    StateId c0 = chain.initial_states().at(0);
    StateId s0 = whole.initial_states().at(0);
    nodes.push_back({c0, s0});
    parent.push_back(-1);
    via.push_back(-1);
    seen.insert(key(c0, s0));

    for (std::size_t qi = 0; qi < nodes.size(); ++qi) {
        Node node = nodes[qi];
        if (chain.is_accepting(node.chain_state) && !whole.is_accepting(node.aut_state)) {
            std::vector<SymbolId> symbols;
            for (std::int64_t i = static_cast<std::int64_t>(qi); i >= 0; i = parent[i])
                if (via[i] >= 0) symbols.push_back(static_cast<SymbolId>(via[i]));
            std::reverse(symbols.begin(), symbols.end());
            return Word(a.alphabet(), std::move(symbols));
        }
        for (SymbolId sym = 0; sym < a.alphabet().size(); ++sym) {
            StateId nc = target_on(chain, node.chain_state, sym);
            StateId ns = target_on(whole, node.aut_state, sym);
            if (seen.insert(key(nc, ns)).second) {
                nodes.push_back({nc, ns});
                parent.push_back(static_cast<std::int64_t>(qi));
                via.push_back(static_cast<std::int32_t>(sym));
            }
        }
    }
    return std::nullopt;
}

/// Exhaustive explanation sets for single-symbol bounds: classifies all
/// completions of every fixed-position subset directly against the
/// automaton, then filters for minimality. Returns (axps, cxps).
inline std::pair<std::set<IndexSet>, std::set<IndexSet>> brute_force_explanations(
    const Automaton& a, const Word& word) {
    const std::size_t n = word.size();
    const std::size_t d = a.alphabet().size();

    // weak_axp[mask]: every word agreeing with `word` on the mask positions
    // is accepted (positions mapped to bits 0..n-1; bit set = fixed).
    std::vector<char> weak_axp(std::size_t{1} << n, 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> free_positions;
        for (std::size_t i = 0; i < n; ++i)
            if (!(mask & (std::size_t{1} << i))) free_positions.push_back(i);
        std::vector<SymbolId> symbols = word.symbols();
        std::vector<std::size_t> digits(free_positions.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < free_positions.size(); ++k)
                symbols[free_positions[k]] = static_cast<SymbolId>(digits[k]);
            if (!a.accepts(Word(a.alphabet(), symbols))) {
                weak_axp[mask] = 0;
                break;
            }
            std::size_t carry = 0;
            while (carry < digits.size() && ++digits[carry] == d) digits[carry++] = 0;
            if (carry == digits.size()) break;
        }
    }

    auto mask_of = [&](const IndexSet& s) {
        std::size_t mask = 0;
        for (std::size_t p : s) mask |= std::size_t{1} << (p - 1);
        return mask;
    };
    auto set_of = [&](std::size_t mask) {
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) s.insert(i + 1);
        return s;
    };
    const std::size_t full = (std::size_t{1} << n) - 1;

    std::set<IndexSet> axps;
    std::set<IndexSet> cxps;
    for (std::size_t mask = 0; mask <= full; ++mask) {
        if (weak_axp[mask]) {
            bool minimal = true;
            for (std::size_t i = 0; i < n && minimal; ++i)
                if ((mask & (std::size_t{1} << i)) && weak_axp[mask & ~(std::size_t{1} << i)])
                    minimal = false;
            if (minimal) axps.insert(set_of(mask));
        }
        // CXp with freed set Y is weak iff the pattern fixing its complement
        // admits a counterexample.
        if (!weak_axp[full & ~mask]) {
            bool minimal = true;
            for (std::size_t i = 0; i < n && minimal; ++i)
                if ((mask & (std::size_t{1} << i)) &&
                    !weak_axp[full & ~(mask & ~(std::size_t{1} << i))])
                    minimal = false;
            if (minimal) cxps.insert(set_of(mask));
        }
    }
    (void)mask_of;
    return {std::move(axps), std::move(cxps)};
}

/// All subset-minimal hitting sets of `sets` by scanning every subset of
/// {1..universe}.
inline std::set<IndexSet> brute_minimal_hitting_sets(const std::vector<IndexSet>& sets,
                                                     std::size_t universe) {
    auto hits_all = [&](std::size_t mask) {
        for (const IndexSet& s : sets) {
            bool hit = false;
            for (std::size_t p : s) hit = hit || (mask & (std::size_t{1} << (p - 1)));
            if (!hit) return false;
        }
        return true;
    };
    std::set<IndexSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << universe); ++mask) {
        if (!hits_all(mask)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < universe && minimal; ++i)
            if ((mask & (std::size_t{1} << i)) && hits_all(mask & ~(std::size_t{1} << i)))
                minimal = false;
        if (!minimal) continue;
        IndexSet s;
        for (std::size_t i = 0; i < universe; ++i)
            if (mask & (std::size_t{1} << i)) s.insert(i + 1);
        out.insert(std::move(s));
    }
    return out;
}

inline bool naive_contains_any(const Word& text, const std::vector<Word>& patterns) {
    for (const Word& p : patterns) {
        if (p.size() > text.size()) continue;
        for (std::size_t off = 0; off + p.size() <= text.size(); ++off) {
            bool match = true;
            for (std::size_t k = 0; k < p.size() && match; ++k)
                match = text.at(off + k) == p.at(k);
            if (match) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Seeded random instances.

inline Word random_word(SplitMix64& rng, const Alphabet& alphabet, std::size_t len) {
    std::vector<SymbolId> symbols(len);
    for (std::size_t i = 0; i < len; ++i)
        symbols[i] = static_cast<SymbolId>(rng.below(alphabet.size()));
    return Word(alphabet, std::move(symbols));
}

/// Complete random DFA: every (state, symbol) gets one uniform target;
/// every state is accepting with probability 1/2 (resampled if that leaves
/// no accepting state reachable distinction; plain draw is fine here).
inline Automaton random_dfa(SplitMix64& rng, std::size_t states, std::size_t alphabet_size) {
    Alphabet alphabet = Alphabet::from_range('a', static_cast<char>('a' + alphabet_size - 1));
    Automaton a(alphabet, states);
    a.mark_initial(0);
    for (StateId s = 0; s < states; ++s) {
        if (rng.below(2)) a.mark_accepting(s);
        std::map<StateId, SymbolSet> by_target;
        for (SymbolId sym = 0; sym < alphabet_size; ++sym)
            by_target[static_cast<StateId>(rng.below(states))].insert(sym, sym);
        for (auto& [dst, syms] : by_target) a.add_transition(s, std::move(syms), dst);
    }
    return a;
}

/// Random NFA with a sprinkling of epsilon transitions.
inline Automaton random_nfa(SplitMix64& rng, std::size_t states, std::size_t alphabet_size) {
    Alphabet alphabet = Alphabet::from_range('a', static_cast<char>('a' + alphabet_size - 1));
    Automaton a(alphabet, states);
    a.mark_initial(static_cast<StateId>(rng.below(states)));
    std::size_t transitions = 1 + rng.below(3 * states);
    for (std::size_t t = 0; t < transitions; ++t) {
        StateId src = static_cast<StateId>(rng.below(states));
        StateId dst = static_cast<StateId>(rng.below(states));
        a.add_transition(src, static_cast<SymbolId>(rng.below(alphabet_size)), dst);
    }
    std::size_t epsilons = rng.below(states);
    for (std::size_t t = 0; t < epsilons; ++t) {
        StateId src = static_cast<StateId>(rng.below(states));
        StateId dst = static_cast<StateId>(rng.below(states));
        if (src != dst) a.add_epsilon(src, dst);
    }
    for (StateId s = 0; s < states; ++s)
        if (rng.below(2)) a.mark_accepting(s);
    return a;
}

}  // namespace fax::testing
