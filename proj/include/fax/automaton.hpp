#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "fax/alphabet.hpp"
#include "fax/errors.hpp"

namespace fax {

inline constexpr std::size_t kDefaultDeterminizeCap = 1u << 20;

/// Finite automaton over an interned alphabet. Transitions carry canonical
/// symbol sets (sorted disjoint id ranges); epsilon transitions are kept
/// separately. Instances are immutable once built and safe to share across
/// concurrent queries.
class Automaton {
public:
    struct Arc {
        SymbolSet symbols;
        StateId dst;
    };

    Automaton(Alphabet alphabet, std::size_t state_count)
        : alphabet_(std::move(alphabet)),
          arcs_(state_count),
          epsilons_(state_count),
          accepting_(state_count, false) {}

    StateId add_state() {
        arcs_.emplace_back();
        epsilons_.emplace_back();
        accepting_.push_back(false);
        flags_dirty_ = true;
        return static_cast<StateId>(arcs_.size() - 1);
    }

    void add_transition(StateId src, SymbolSet symbols, StateId dst) {
        check_state(src);
        check_state(dst);
        if (symbols.empty()) throw FormatError("transition with empty symbol set");
        if (symbols.ranges().back().second >= alphabet_.size())
            throw UnknownSymbolError("transition symbol id out of range");
        // Keep one arc per (src, dst) so symbol sets stay canonical.
        for (Arc& arc : arcs_[src]) {
            if (arc.dst == dst) {
                arc.symbols.merge(symbols);
                flags_dirty_ = true;
                return;
            }
        }
        auto& list = arcs_[src];
        Arc arc{std::move(symbols), dst};
        auto it = std::lower_bound(list.begin(), list.end(), arc,
                                   [](const Arc& a, const Arc& b) { return a.dst < b.dst; });
        list.insert(it, std::move(arc));
        flags_dirty_ = true;
    }

    void add_transition(StateId src, SymbolId symbol, StateId dst) {
        add_transition(src, SymbolSet::single(symbol), dst);
    }

    void add_epsilon(StateId src, StateId dst) {
        check_state(src);
        check_state(dst);
        auto& list = epsilons_[src];
        auto it = std::lower_bound(list.begin(), list.end(), dst);
        if (it == list.end() || *it != dst) list.insert(it, dst);
        flags_dirty_ = true;
    }

    void mark_initial(StateId s) {
        check_state(s);
        auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
        if (it == initial_.end() || *it != s) initial_.insert(it, s);
        flags_dirty_ = true;
    }

    void mark_accepting(StateId s, bool value = true) {
        check_state(s);
        accepting_[s] = value;
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return arcs_.size(); }
    const std::vector<StateId>& initial_states() const { return initial_; }
    bool is_accepting(StateId s) const { return accepting_.at(s); }

    std::vector<StateId> accepting_states() const {
        std::vector<StateId> out;
        for (StateId s = 0; s < accepting_.size(); ++s)
            if (accepting_[s]) out.push_back(s);
        return out;
    }

    const std::vector<Arc>& arcs_from(StateId s) const { return arcs_.at(s); }
    const std::vector<StateId>& epsilons_from(StateId s) const { return epsilons_.at(s); }

    bool has_epsilons() const {
        for (const auto& e : epsilons_)
            if (!e.empty()) return true;
        return false;
    }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (const auto& a : arcs_) n += a.size();
        return n;
    }

    std::size_t epsilon_count() const {
        std::size_t n = 0;
        for (const auto& e : epsilons_) n += e.size();
        return n;
    }

    /// Structural determinism check: one initial state, no epsilons, and no
    /// two arcs from the same state covering a common symbol. Cached.
    bool is_deterministic() const {
        if (flags_dirty_) recompute_flags();
        return deterministic_;
    }

    /// True when deterministic and every (state, symbol) has a successor.
    bool is_complete() const {
        if (flags_dirty_) recompute_flags();
        return deterministic_ && complete_;
    }

    /// Extends a sorted state set with everything reachable via epsilons.
    void close_epsilon(std::vector<StateId>& states) const {
        std::vector<StateId> stack(states);
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (StateId t : epsilons_[s]) {
                auto it = std::lower_bound(states.begin(), states.end(), t);
                if (it == states.end() || *it != t) {
                    states.insert(it, t);
                    stack.push_back(t);
                }
            }
        }
    }

    /// Epsilon-closed initial state set.
    std::vector<StateId> start_set() const {
        std::vector<StateId> s = initial_;
        close_epsilon(s);
        return s;
    }

    /// Epsilon-closed successor set of a sorted state set on one symbol.
    std::vector<StateId> step(const std::vector<StateId>& from, SymbolId symbol) const {
        std::vector<StateId> out;
        for (StateId s : from) {
            for (const Arc& arc : arcs_[s]) {
                if (arc.symbols.contains(symbol)) {
                    auto it = std::lower_bound(out.begin(), out.end(), arc.dst);
                    if (it == out.end() || *it != arc.dst) out.insert(it, arc.dst);
                }
            }
        }
        close_epsilon(out);
        return out;
    }

    bool any_accepting(const std::vector<StateId>& states) const {
        for (StateId s : states)
            if (accepting_[s]) return true;
        return false;
    }

    /// Subset simulation; works for DFAs and NFAs alike.
    bool accepts(const Word& w) const {
        if (w.alphabet() != alphabet_)
            throw AlphabetMismatchError("word alphabet differs from automaton alphabet");
        std::vector<StateId> cur = start_set();
        for (SymbolId sym : w.symbols()) {
            if (cur.empty()) return false;
            cur = step(cur, sym);
        }
        return any_accepting(cur);
    }

private:
    void check_state(StateId s) const {
        if (s >= arcs_.size()) throw FormatError("state id out of range");
    }

    void recompute_flags() const {
        deterministic_ = initial_.size() == 1;
        complete_ = true;
        if (deterministic_) {
            for (const auto& e : epsilons_) {
                if (!e.empty()) {
                    deterministic_ = false;
                    break;
                }
            }
        }
        for (StateId s = 0; deterministic_ && s < arcs_.size(); ++s) {
            std::size_t covered = 0;
            SymbolSet seen;
            for (const Arc& arc : arcs_[s]) {
                if (seen.intersects(arc.symbols)) {
                    deterministic_ = false;
                    break;
                }
                covered += arc.symbols.count();
                seen.merge(arc.symbols);
            }
            if (covered < alphabet_.size()) complete_ = false;
        }
        flags_dirty_ = false;
    }

    Alphabet alphabet_;
    std::vector<std::vector<Arc>> arcs_;
    std::vector<std::vector<StateId>> epsilons_;
    std::vector<bool> accepting_;
    std::vector<StateId> initial_;

    mutable bool flags_dirty_ = true;
    mutable bool deterministic_ = false;
    mutable bool complete_ = false;
};

inline bool accepts(const Automaton& a, const Word& w) { return a.accepts(w); }

/// Reachable-subset construction. The result is deterministic, epsilon-free
/// and complete (the empty subset acts as the sink when needed).
inline Automaton determinize(const Automaton& a, std::size_t state_cap = kDefaultDeterminizeCap) {
    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> subsets;
    std::queue<StateId> pending;

    auto intern = [&](std::vector<StateId> set) {
        auto [it, fresh] = ids.emplace(std::move(set), static_cast<StateId>(subsets.size()));
        if (fresh) {
            if (subsets.size() >= state_cap)
                throw StateExplosionError("subset construction exceeded cap of " +
                                          std::to_string(state_cap) + " states");
            subsets.push_back(it->first);
            pending.push(it->second);
        }
        return it->second;
    };

    StateId start = intern(a.start_set());
    std::vector<std::vector<StateId>> delta;  // delta[state][symbol]
    const std::size_t sigma = a.alphabet().size();

    while (!pending.empty()) {
        StateId id = pending.front();
        pending.pop();
        std::vector<StateId> row(sigma);
        for (SymbolId sym = 0; sym < sigma; ++sym) row[sym] = intern(a.step(subsets[id], sym));
        if (delta.size() <= id) delta.resize(id + 1);
        delta[id] = std::move(row);
    }

    Automaton out(a.alphabet(), subsets.size());
    out.mark_initial(start);
    for (StateId s = 0; s < subsets.size(); ++s) {
        if (a.any_accepting(subsets[s])) out.mark_accepting(s);
        // Group symbols by target so transitions come out as compact ranges.
        std::map<StateId, SymbolSet> by_target;
        for (SymbolId sym = 0; sym < sigma; ++sym) by_target[delta[s][sym]].insert(sym, sym);
        for (auto& [dst, syms] : by_target) out.add_transition(s, std::move(syms), dst);
    }
    return out;
}

/// Totalizes a deterministic automaton, adding at most one non-accepting
/// sink state. Already-complete automata come back unchanged.
inline Automaton complete(const Automaton& a) {
    if (!a.is_deterministic())
        throw NotDeterministicError("complete() requires a deterministic automaton");
    if (a.is_complete()) return a;

    Automaton out = a;
    StateId sink = out.add_state();
    for (StateId s = 0; s < out.state_count(); ++s) {
        SymbolSet covered;
        for (const Automaton::Arc& arc : out.arcs_from(s)) covered.merge(arc.symbols);
        SymbolSet missing = covered.complement_in(out.alphabet());
        if (!missing.empty()) out.add_transition(s, std::move(missing), sink);
    }
    return out;
}

/// Complement of a deterministic automaton: completes it, then flips the
/// accepting set. At most one state larger than the input.
inline Automaton complement(const Automaton& a) {
    if (!a.is_deterministic())
        throw NotDeterministicError("complement() requires a deterministic automaton");
    Automaton out = complete(a);
    for (StateId s = 0; s < out.state_count(); ++s) out.mark_accepting(s, !out.is_accepting(s));
    return out;
}

}  // namespace fax
