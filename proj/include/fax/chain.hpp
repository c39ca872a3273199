#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "fax/automaton.hpp"
#include "fax/index_set.hpp"

namespace fax {

/// Replacement-length interval for freed positions: a freed position may be
/// replaced by any string over the alphabet whose length lies in
/// [lower, upper]. Restricted to lower <= 1 <= upper so the base word always
/// stays a member of every pattern built from it.
class Bounds {
public:
    static constexpr unsigned kInfinity = std::numeric_limits<unsigned>::max();

    Bounds(unsigned lower, unsigned upper) : lower_(lower), upper_(upper) {
        if (lower > 1 || upper < 1) throw FormatError("bounds must satisfy lower <= 1 <= upper");
    }

    static Bounds one() { return Bounds(1, 1); }
    static Bounds one_to_inf() { return Bounds(1, kInfinity); }
    static Bounds zero_to_inf() { return Bounds(0, kInfinity); }

    /// Parses "1:1", "1:inf" or "0:inf".
    static std::optional<Bounds> parse(const std::string& text) {
        if (text == "1:1") return one();
        if (text == "1:inf") return one_to_inf();
        if (text == "0:inf") return zero_to_inf();
        return std::nullopt;
    }

    unsigned lower() const { return lower_; }
    unsigned upper() const { return upper_; }
    bool unbounded() const { return upper_ == kInfinity; }

    /// Exact single-symbol substitution (the length-preserving case).
    bool single() const { return lower_ == 1 && upper_ == 1; }

    std::string str() const {
        std::string out = std::to_string(lower_) + ":";
        return out + (unbounded() ? "inf" : std::to_string(upper_));
    }

    bool operator==(const Bounds& other) const {
        return lower_ == other.lower_ && upper_ == other.upper_;
    }
    bool operator!=(const Bounds& other) const { return !(*this == other); }

private:
    unsigned lower_;
    unsigned upper_;
};

/// A per-position fixed/free pattern over a base word. Fixed positions carry
/// exactly the word's symbol; free positions admit any replacement string
/// with length in the bounds. This is the candidate-explanation language: a
/// chain automaton with at most |word|+1 states realizes it.
///
/// Value object: owned by one extraction run, cloneable, never shared while
/// being mutated.
class ChainPattern {
public:
    ChainPattern(Word word, const IndexSet& free, Bounds bounds)
        : word_(std::move(word)), free_(word_.size(), false), bounds_(bounds) {
        for (std::size_t p : free) {
            check_position(p);
            free_[p - 1] = true;
        }
    }

    std::size_t length() const { return word_.size(); }
    const Word& word() const { return word_; }
    const Bounds& bounds() const { return bounds_; }

    bool is_free(std::size_t position) const {
        check_position(position);
        return free_[position - 1];
    }

    /// O(1) flip of one position's fixed/free status. The pattern itself is
    /// the chain automaton's transition table, so no rebuild happens.
    void toggle(std::size_t position, bool make_free) {
        check_position(position);
        free_[position - 1] = make_free;
    }

    IndexSet free_set() const {
        IndexSet s;
        for (std::size_t i = 0; i < free_.size(); ++i)
            if (free_[i]) s.insert(i + 1);
        return s;
    }

    IndexSet fixed_set() const { return free_set().complement(length()); }

    /// Fixed symbols verbatim; freed positions as `.` (single symbol),
    /// `+` (non-empty string), `*` (any string), `?` (at most one symbol).
    std::string render() const {
        std::string out;
        const bool compact = word_.alphabet().single_char();
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (i > 0 && !compact) out += ' ';
            if (!free_[i]) {
                out += word_.alphabet().name(word_.at(i));
            } else if (bounds_.single()) {
                out += '.';
            } else if (bounds_.unbounded()) {
                out += bounds_.lower() == 0 ? '*' : '+';
            } else if (bounds_.upper() == 1) {
                out += '?';
            } else {
                out += "{" + std::to_string(bounds_.lower()) + ".." +
                       std::to_string(bounds_.upper()) + "}";
            }
        }
        return out;
    }

    bool operator==(const ChainPattern& other) const {
        return word_ == other.word_ && free_ == other.free_ && bounds_ == other.bounds_;
    }

private:
    void check_position(std::size_t position) const {
        if (position < 1 || position > word_.size())
            throw FormatError("position " + std::to_string(position) + " out of range 1.." +
                              std::to_string(word_.size()));
    }

    Word word_;
    std::vector<bool> free_;
    Bounds bounds_;
};

/// Pattern that fixes exactly the positions in `s` and frees the rest
/// (the sufficient-reason candidate for `s`).
inline ChainPattern build_axp_pattern(const IndexSet& s, const Word& w, Bounds b) {
    for (std::size_t p : s)
        if (p < 1 || p > w.size()) throw FormatError("index " + std::to_string(p) + " out of range");
    return ChainPattern(w, s.complement(w.size()), b);
}

/// Pattern that frees exactly the positions in `s` and fixes the rest
/// (the decision-flip candidate for `s`).
inline ChainPattern build_cxp_pattern(const IndexSet& s, const Word& w, Bounds b) {
    for (std::size_t p : s)
        if (p < 1 || p > w.size()) throw FormatError("index " + std::to_string(p) + " out of range");
    return ChainPattern(w, s, b);
}

/// Copying variant of ChainPattern::toggle.
inline ChainPattern toggle_position(const ChainPattern& p, std::size_t position, bool make_free) {
    ChainPattern out = p;
    out.toggle(position, make_free);
    return out;
}

/// Materializes the chain automaton. States q0..qn in order; a fixed
/// position i contributes the edge q(i-1) --w[i]--> q(i). A freed position
/// contributes, depending on the bounds:
///   [1,1]    a full-alphabet edge q(i-1) -> q(i)
///   [1,inf)  the same edge plus a full-alphabet self-loop on q(i)
///   [0,inf)  an epsilon edge q(i-1) -> q(i) plus the self-loop on q(i)
///   [l,u] with finite u > 1: a symbol chain of u extra states with epsilon
///            exits after each prefix of length >= max(l,1) (plus the
///            epsilon skip when l = 0).
inline Automaton chain_to_automaton(const ChainPattern& p) {
    const std::size_t n = p.length();
    const Bounds& b = p.bounds();
    Automaton a(p.word().alphabet(), n + 1);
    const SymbolSet sigma = SymbolSet::all(p.word().alphabet());

    a.mark_initial(0);
    a.mark_accepting(static_cast<StateId>(n));

    for (std::size_t i = 1; i <= n; ++i) {
        const StateId src = static_cast<StateId>(i - 1);
        const StateId dst = static_cast<StateId>(i);
        if (!p.is_free(i)) {
            a.add_transition(src, p.word().at(i - 1), dst);
            continue;
        }
        if (b.unbounded()) {
            if (b.lower() == 0) {
                a.add_epsilon(src, dst);
            } else {
                a.add_transition(src, sigma, dst);
            }
            a.add_transition(dst, sigma, dst);
        } else if (b.upper() == 1) {
            if (b.lower() == 0) a.add_epsilon(src, dst);
            a.add_transition(src, sigma, dst);
        } else {
            if (b.lower() == 0) a.add_epsilon(src, dst);
            StateId prev = src;
            for (unsigned k = 1; k < b.upper(); ++k) {
                StateId mid = a.add_state();
                a.add_transition(prev, sigma, mid);
                a.add_epsilon(mid, dst);
                prev = mid;
            }
            a.add_transition(prev, sigma, dst);
        }
    }
    return a;
}

}  // namespace fax
