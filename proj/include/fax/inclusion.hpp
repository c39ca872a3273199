#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "fax/automaton.hpp"
#include "fax/chain.hpp"

namespace fax {

/// Outcome of a language-inclusion query L(chain) subseteq L(a): either
/// included, or a witness word that the chain generates and `a` rejects.
struct InclusionResult {
    std::optional<Word> counterexample;

    bool included() const { return !counterexample.has_value(); }
};

struct InclusionOptions {
    /// Cap on product pairs explored per query. Exceeding it raises
    /// BudgetExceededError rather than ever returning a wrong answer.
    std::uint64_t node_budget = 20'000'000;
};

/// Decides L(chain) subseteq L(a) by emptiness of the product of the chain
/// with the complement of `a`, determinized lazily: the search explores
/// pairs (chain state, subset of a's states reachable on the prefix read so
/// far). A violation is a chain-accepting pair whose subset holds no
/// accepting state of `a`. This works for non-deterministic `a` without any
/// up-front determinization.
///
/// The checker memoizes the subsets of `a` and their per-symbol successors
/// across queries, so the repeated one-position-toggled checks issued by the
/// extraction loops stay incremental: each check costs one breadth-first
/// sweep over at most (chain states) x (seen subsets) pairs. Counterexamples
/// are rebuilt from parent pointers; the search expands symbols in ascending
/// id order, so the witness is the shortest, lexicographically least one.
///
/// One checker serves one automaton. Each check owns its private frontier;
/// checkers are not shared between threads.
class InclusionChecker {
public:
    explicit InclusionChecker(const Automaton& a, InclusionOptions options = {})
        : a_(&a), options_(options) {
        start_subset_ = intern_subset(a.start_set());
    }

    const Automaton& automaton() const { return *a_; }
    std::uint64_t checks_run() const { return checks_run_; }
    std::uint64_t nodes_expanded() const { return nodes_expanded_; }

    InclusionResult check(const ChainPattern& chain) {
        if (chain.word().alphabet() != a_->alphabet())
            throw AlphabetMismatchError("pattern alphabet differs from automaton alphabet");
        ++checks_run_;

        const std::size_t n = chain.length();
        const Bounds& b = chain.bounds();
        const bool finite_multi = !b.unbounded() && b.upper() > 1;
        const std::uint32_t span = finite_multi ? b.upper() - 1 : 0;

        records_.clear();
        visited_.clear();
        queue_.clear();
        found_ = -1;

        // Chain state encoding: 0..n are the boundaries ("i positions
        // consumed"); for finite upper bound u > 1, (n+1) + (p-1)*(u-1) +
        // (j-1) means "j symbols consumed inside freed position p".
        auto boundary = [](std::size_t i) { return static_cast<std::uint32_t>(i); };
        auto inter = [&](std::size_t p, std::uint32_t j) {
            return static_cast<std::uint32_t>(n + 1 + (p - 1) * span + (j - 1));
        };

        auto discover = [&](std::uint32_t cs, std::uint32_t subset, std::int64_t parent,
                            std::int32_t symbol) {
            std::uint64_t key = (static_cast<std::uint64_t>(cs) << 32) | subset;
            if (!visited_.emplace(key).second) return;
            if (records_.size() >= options_.node_budget)
                throw BudgetExceededError("inclusion search exceeded node budget of " +
                                          std::to_string(options_.node_budget));
            records_.push_back({cs, subset, parent, symbol});
            ++nodes_expanded_;
            std::int64_t idx = static_cast<std::int64_t>(records_.size()) - 1;
            if (cs == boundary(n) && !subset_accepting_[subset] && found_ < 0) found_ = idx;
            queue_.push_back(idx);
        };

        auto expand_epsilons = [&](std::int64_t idx) {
            // Chain epsilon edges keep the word (and the subset) unchanged.
            const Record rec = records_[idx];
            std::uint32_t cs = rec.chain_state;
            if (cs <= n) {
                std::size_t next_pos = cs + 1;
                if (next_pos <= n && chain.is_free(next_pos) && b.lower() == 0)
                    discover(boundary(next_pos), rec.subset, idx, -1);
            } else {
                std::size_t p = (cs - (n + 1)) / span + 1;
                discover(boundary(p), rec.subset, idx, -1);
            }
        };

        discover(boundary(0), start_subset_, -1, -1);
        for (std::size_t qi = 0; qi < queue_.size() && found_ < 0; ++qi)
            expand_epsilons(queue_[qi]);

        const std::size_t sigma = a_->alphabet().size();
        for (std::size_t qi = 0; qi < queue_.size() && found_ < 0; ++qi) {
            const std::int64_t idx = queue_[qi];
            const std::uint32_t cs = records_[idx].chain_state;
            const std::uint32_t subset = records_[idx].subset;
            for (SymbolId sym = 0; sym < sigma && found_ < 0; ++sym) {
                std::uint32_t next_subset_id = subset_delta(subset, sym);
                std::size_t before = queue_.size();
                if (cs <= n) {
                    // Self-loop on a boundary whose position was freed with
                    // an unbounded upper limit.
                    if (cs >= 1 && chain.is_free(cs) && b.unbounded())
                        discover(boundary(cs), next_subset_id, idx, static_cast<std::int32_t>(sym));
                    std::size_t p = cs + 1;
                    if (p <= n) {
                        if (!chain.is_free(p)) {
                            if (chain.word().at(p - 1) == sym)
                                discover(boundary(p), next_subset_id, idx,
                                         static_cast<std::int32_t>(sym));
                        } else if (finite_multi) {
                            if (span >= 1)
                                discover(inter(p, 1), next_subset_id, idx,
                                         static_cast<std::int32_t>(sym));
                        } else if (b.upper() == 1 || b.lower() == 1) {
                            discover(boundary(p), next_subset_id, idx,
                                     static_cast<std::int32_t>(sym));
                        }
                    }
                } else {
                    std::size_t p = (cs - (n + 1)) / span + 1;
                    std::uint32_t j = (cs - (n + 1)) % span + 1;
                    if (j + 1 <= span) {
                        discover(inter(p, j + 1), next_subset_id, idx,
                                 static_cast<std::int32_t>(sym));
                    } else {
                        discover(boundary(p), next_subset_id, idx, static_cast<std::int32_t>(sym));
                    }
                }
                // Close freshly discovered pairs under chain epsilons before
                // the next layer consumes them.
                for (std::size_t k = before; k < queue_.size() && found_ < 0; ++k)
                    expand_epsilons(queue_[k]);
            }
        }

        if (found_ < 0) return InclusionResult{};
        std::vector<SymbolId> symbols;
        for (std::int64_t i = found_; i >= 0; i = records_[i].parent)
            if (records_[i].symbol >= 0) symbols.push_back(static_cast<SymbolId>(records_[i].symbol));
        std::reverse(symbols.begin(), symbols.end());
        return InclusionResult{Word(a_->alphabet(), std::move(symbols))};
    }

private:
    struct Record {
        std::uint32_t chain_state;
        std::uint32_t subset;
        std::int64_t parent;
        std::int32_t symbol;  // -1 for epsilon / start
    };

    std::uint32_t intern_subset(std::vector<StateId> set) {
        auto [it, fresh] = subset_ids_.emplace(std::move(set), static_cast<std::uint32_t>(subsets_.size()));
        if (fresh) {
            subsets_.push_back(it->first);
            subset_accepting_.push_back(a_->any_accepting(it->first));
            delta_.emplace_back(a_->alphabet().size(), -1);
        }
        return it->second;
    }

    std::uint32_t subset_delta(std::uint32_t subset, SymbolId sym) {
        std::int64_t cached = delta_[subset][sym];
        if (cached >= 0) return static_cast<std::uint32_t>(cached);
        std::uint32_t next = intern_subset(a_->step(subsets_[subset], sym));
        delta_[subset][sym] = next;  // intern may have grown delta_; index anew
        return next;
    }

    const Automaton* a_;
    InclusionOptions options_;

    // Persistent across checks: subsets of a's states and their successors.
    std::map<std::vector<StateId>, std::uint32_t> subset_ids_;
    std::vector<std::vector<StateId>> subsets_;
    std::vector<char> subset_accepting_;
    std::vector<std::vector<std::int64_t>> delta_;
    std::uint32_t start_subset_ = 0;

    // Per-check scratch.
    std::vector<Record> records_;
    std::unordered_set<std::uint64_t> visited_;
    std::vector<std::int64_t> queue_;
    std::int64_t found_ = -1;

    std::uint64_t checks_run_ = 0;
    std::uint64_t nodes_expanded_ = 0;
};

/// One-shot convenience wrapper around InclusionChecker.
inline InclusionResult is_included(const ChainPattern& chain, const Automaton& a,
                                   InclusionOptions options = {}) {
    InclusionChecker checker(a, options);
    return checker.check(chain);
}

}  // namespace fax
