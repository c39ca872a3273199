#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fax/errors.hpp"
#include "fax/index_set.hpp"

namespace fax {

/// Exact minimal hitting-set candidate generation with up-set blocking: the
/// candidate engine behind explanation enumeration. `to_hit` holds the dual
/// sets every candidate must intersect; `blocked` holds the already-found
/// targets, excluding all their supersets from future candidates.
///
/// The engine is an internal exact search: DPLL-style branching over
/// position inclusion with unit propagation on the to-hit clauses and the
/// blocking clauses, iteratively deepened on candidate cardinality. Branching
/// ascends through positions and tries inclusion first, so the answer is
/// deterministic: minimum cardinality, then lexicographically smallest
/// position sequence.
///
/// One instance per enumeration run; mutation is single-threaded.
class HittingSetProblem {
public:
    explicit HittingSetProblem(std::size_t universe_size) : universe_(universe_size) {}

    std::size_t universe_size() const { return universe_; }
    const std::vector<IndexSet>& sets_to_hit() const { return to_hit_; }
    const std::vector<IndexSet>& blocked_sets() const { return blocked_; }

    /// Requires every future candidate to intersect `d`. An empty dual would
    /// silently make the problem unsatisfiable, so it signals a caller bug.
    void add_set_to_hit(const IndexSet& d) {
        if (d.empty()) throw InvalidDualError("empty dual set added to hitting-set problem");
        check_range(d);
        to_hit_.push_back(d);
    }

    /// Excludes every superset of `t` (including `t` itself) from future
    /// candidates. Blocking the empty set blocks everything.
    void block_upset(const IndexSet& t) {
        check_range(t);
        blocked_.push_back(t);
    }

    /// Subset-minimal hitting set of `to_hit` that is no superset of any
    /// blocked set, or nullopt when none exists. Deterministic tie-breaking:
    /// minimum cardinality first, then lexicographically smallest sequence.
    std::optional<IndexSet> next_minimal() const {
        auto found = solve();
        if (!found) return std::nullopt;
        // Element-drop pass. The search already yields subset-minimal sets
        // (a hitting proper subset would have been found at a lower
        // cardinality level), so this is a guard, not a repair.
        IndexSet result = *found;
        for (std::size_t p : found->positions()) {
            IndexSet without = result;
            without.erase(p);
            bool hits_all = true;
            for (const IndexSet& s : to_hit_) {
                if (!without.intersects(s)) {
                    hits_all = false;
                    break;
                }
            }
            if (hits_all) result = without;
        }
        return result;
    }

    /// Same contract as next_minimal plus globally minimum cardinality among
    /// all admissible hitting sets (which the branch-and-bound guarantees).
    std::optional<IndexSet> next_minimum() const { return solve(); }

    /// Human-readable clause dump for diagnostics.
    std::string dump_clauses() const {
        std::ostringstream out;
        out << "universe: 1.." << universe_ << "\n";
        for (const IndexSet& s : to_hit_) out << "hit " << s.str() << "\n";
        for (const IndexSet& s : blocked_) out << "block " << s.str() << "\n";
        return out.str();
    }

private:
    void check_range(const IndexSet& s) const {
        for (std::size_t p : s)
            if (p < 1 || p > universe_)
                throw FormatError("position " + std::to_string(p) + " outside universe 1.." +
                                  std::to_string(universe_));
    }

    struct Search {
        static constexpr char kUndecided = 0;
        static constexpr char kIn = 1;
        static constexpr char kOut = 2;

        std::vector<std::vector<int>> hit;     // to-hit sets, local var indices
        std::vector<std::vector<int>> block;   // blocking sets, local var indices
        std::vector<std::vector<int>> var_hit;
        std::vector<std::vector<int>> var_block;
        std::size_t nvars = 0;

        std::vector<char> status;
        std::vector<int> cover;       // per hit set: #in members
        std::vector<int> open_count;  // per hit set: #undecided members
        std::vector<int> block_in;    // per block set: #in members
        std::vector<int> block_out;   // per block set: #out members
        std::vector<int> trail;
        int chosen = 0;
        int limit = 0;
        std::vector<char> lb_used;

        // Applies every count update before reporting a conflict, so the
        // trail always undoes cleanly.
        bool assign(int var, char value) {
            status[var] = value;
            trail.push_back(var);
            bool ok = true;
            if (value == kIn) {
                ++chosen;
                if (chosen > limit) ok = false;
                for (int h : var_hit[var]) {
                    ++cover[h];
                    --open_count[h];
                }
                for (int b : var_block[var]) {
                    ++block_in[b];
                    if (block_in[b] == static_cast<int>(block[b].size())) ok = false;
                }
            } else {
                for (int h : var_hit[var]) {
                    --open_count[h];
                    if (cover[h] == 0 && open_count[h] == 0) ok = false;
                }
                for (int b : var_block[var]) ++block_out[b];
            }
            return ok;
        }

        void undo_to(std::size_t mark) {
            while (trail.size() > mark) {
                int var = trail.back();
                trail.pop_back();
                if (status[var] == kIn) {
                    --chosen;
                    for (int h : var_hit[var]) {
                        --cover[h];
                        ++open_count[h];
                    }
                    for (int b : var_block[var]) --block_in[b];
                } else {
                    for (int h : var_hit[var]) ++open_count[h];
                    for (int b : var_block[var]) --block_out[b];
                }
                status[var] = kUndecided;
            }
        }

        bool propagate() {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t h = 0; h < hit.size(); ++h) {
                    if (cover[h] > 0) continue;
                    if (open_count[h] == 0) return false;
                    if (open_count[h] == 1) {
                        for (int v : hit[h]) {
                            if (status[v] == kUndecided) {
                                if (!assign(v, kIn)) return false;
                                changed = true;
                                break;
                            }
                        }
                    }
                }
                for (std::size_t b = 0; b < block.size(); ++b) {
                    int size = static_cast<int>(block[b].size());
                    if (block_in[b] == size) return false;
                    if (block_out[b] == 0 && block_in[b] == size - 1) {
                        for (int v : block[b]) {
                            if (status[v] == kUndecided) {
                                if (!assign(v, kOut)) return false;
                                changed = true;
                                break;
                            }
                        }
                    }
                }
            }
            return true;
        }

        /// Count of pairwise-disjoint uncovered sets: each needs its own
        /// fresh element, so this lower-bounds the additions still required.
        int lower_bound() {
            std::fill(lb_used.begin(), lb_used.end(), 0);
            int count = 0;
            for (std::size_t h = 0; h < hit.size(); ++h) {
                if (cover[h] > 0) continue;
                bool disjoint = true;
                for (int v : hit[h]) {
                    if (status[v] == kUndecided && lb_used[v]) {
                        disjoint = false;
                        break;
                    }
                }
                if (!disjoint) continue;
                ++count;
                for (int v : hit[h])
                    if (status[v] == kUndecided) lb_used[v] = 1;
            }
            return count;
        }

        bool all_covered() const {
            for (std::size_t h = 0; h < hit.size(); ++h)
                if (cover[h] == 0) return false;
            return true;
        }

        bool dfs(std::size_t next, std::vector<int>& solution) {
            std::size_t mark = trail.size();
            if (!propagate() || chosen + lower_bound() > limit) {
                undo_to(mark);
                return false;
            }
            if (all_covered()) {
                if (chosen == limit) {
                    solution.clear();
                    for (std::size_t v = 0; v < nvars; ++v)
                        if (status[v] == kIn) solution.push_back(static_cast<int>(v));
                    undo_to(mark);
                    return true;
                }
                undo_to(mark);  // a smaller admissible set; found at its own level
                return false;
            }
            while (next < nvars && status[next] != kUndecided) ++next;
            if (next == nvars) {
                undo_to(mark);
                return false;
            }
            for (char value : {kIn, kOut}) {
                std::size_t branch_mark = trail.size();
                if (assign(static_cast<int>(next), value) && dfs(next + 1, solution)) return true;
                undo_to(branch_mark);
            }
            undo_to(mark);
            return false;
        }
    };

    std::optional<IndexSet> solve() const {
        for (const IndexSet& t : blocked_)
            if (t.empty()) return std::nullopt;

        // Candidate elements never need to leave the union of the to-hit
        // sets: extra elements cannot help hitting and only risk blocking.
        IndexSet union_set;
        for (const IndexSet& s : to_hit_)
            for (std::size_t p : s) union_set.insert(p);
        const std::vector<std::size_t>& universe = union_set.positions();

        std::vector<int> local_of(universe_ + 1, -1);
        for (std::size_t i = 0; i < universe.size(); ++i)
            local_of[universe[i]] = static_cast<int>(i);

        Search search;
        search.nvars = universe.size();
        for (const IndexSet& s : to_hit_) {
            std::vector<int> local;
            for (std::size_t p : s) local.push_back(local_of[p]);
            search.hit.push_back(std::move(local));
        }
        for (const IndexSet& t : blocked_) {
            // A blocked set reaching outside the union can never be covered
            // by a candidate, so its clause is always satisfied.
            bool relevant = true;
            std::vector<int> local;
            for (std::size_t p : t) {
                if (local_of[p] < 0) {
                    relevant = false;
                    break;
                }
                local.push_back(local_of[p]);
            }
            if (relevant) search.block.push_back(std::move(local));
        }
        search.var_hit.assign(search.nvars, {});
        search.var_block.assign(search.nvars, {});
        for (std::size_t h = 0; h < search.hit.size(); ++h)
            for (int v : search.hit[h]) search.var_hit[v].push_back(static_cast<int>(h));
        for (std::size_t b = 0; b < search.block.size(); ++b)
            for (int v : search.block[b]) search.var_block[v].push_back(static_cast<int>(b));

        search.status.assign(search.nvars, Search::kUndecided);
        search.cover.assign(search.hit.size(), 0);
        search.open_count.assign(search.hit.size(), 0);
        for (std::size_t h = 0; h < search.hit.size(); ++h)
            search.open_count[h] = static_cast<int>(search.hit[h].size());
        search.block_in.assign(search.block.size(), 0);
        search.block_out.assign(search.block.size(), 0);
        search.lb_used.assign(search.nvars, 0);

        std::vector<int> solution;
        for (std::size_t k = 0; k <= search.nvars; ++k) {
            search.limit = static_cast<int>(k);
            if (search.dfs(0, solution)) {
                IndexSet out;
                for (int v : solution) out.insert(universe[v]);
                return out;
            }
        }
        return std::nullopt;
    }

    std::size_t universe_;
    std::vector<IndexSet> to_hit_;
    std::vector<IndexSet> blocked_;
};

}  // namespace fax
