#pragma once

#include <string_view>
#include <utility>

#include "fax/automaton.hpp"

namespace fax {

/// Compiles a regular expression to an epsilon-NFA (Thompson construction,
/// state count linear in the expression size).
///
/// Grammar, lowest to highest precedence:
///   alternation   r | r
///   concatenation r r
///   postfix       r*  r+  r?
///   atoms         literal symbols, classes like [abc] or [c-z], groups (r)
///
/// `.` is intentionally not an atom; write an explicit class instead. All
/// literals must name single-character symbols of the given alphabet.
class RegexParser {
public:
    RegexParser(std::string_view text, Alphabet alphabet)
        : text_(text), nfa_(std::move(alphabet), 0) {}

    Automaton parse() {
        Fragment f = parse_alternation();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        nfa_.mark_initial(f.start);
        nfa_.mark_accepting(f.accept);
        return std::move(nfa_);
    }

private:
    struct Fragment {
        StateId start;
        StateId accept;
    };

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    Fragment parse_alternation() {
        Fragment left = parse_concat();
        while (!eof() && peek() == '|') {
            ++pos_;
            Fragment right = parse_concat();
            StateId s = nfa_.add_state();
            StateId t = nfa_.add_state();
            nfa_.add_epsilon(s, left.start);
            nfa_.add_epsilon(s, right.start);
            nfa_.add_epsilon(left.accept, t);
            nfa_.add_epsilon(right.accept, t);
            left = {s, t};
        }
        return left;
    }

    Fragment parse_concat() {
        // An empty concatenation denotes the empty word.
        if (eof() || peek() == '|' || peek() == ')') {
            StateId s = nfa_.add_state();
            StateId t = nfa_.add_state();
            nfa_.add_epsilon(s, t);
            return {s, t};
        }
        Fragment left = parse_postfix();
        while (!eof() && peek() != '|' && peek() != ')') {
            Fragment right = parse_postfix();
            nfa_.add_epsilon(left.accept, right.start);
            left.accept = right.accept;
        }
        return left;
    }

    Fragment parse_postfix() {
        Fragment f = parse_atom();
        while (!eof() && (peek() == '*' || peek() == '+' || peek() == '?')) {
            char op = text_[pos_++];
            StateId s = nfa_.add_state();
            StateId t = nfa_.add_state();
            nfa_.add_epsilon(s, f.start);
            if (op != '+') nfa_.add_epsilon(s, t);
            if (op != '?') nfa_.add_epsilon(f.accept, f.start);
            nfa_.add_epsilon(f.accept, t);
            f = {s, t};
        }
        return f;
    }

    Fragment parse_atom() {
        if (eof()) throw ParseError("unexpected end of expression", pos_);
        char c = peek();
        if (c == '(') {
            std::size_t open = pos_++;
            Fragment f = parse_alternation();
            if (eof() || peek() != ')') throw ParseError("unmatched '('", open);
            ++pos_;
            return f;
        }
        if (c == '[') return parse_class();
        if (c == ')' || c == '|' || c == '*' || c == '+' || c == '?' || c == ']')
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        ++pos_;
        return make_edge(SymbolSet::single(symbol_at(c, pos_ - 1)));
    }

    Fragment parse_class() {
        std::size_t open = pos_++;
        SymbolSet set;
        while (!eof() && peek() != ']') {
            char lo = text_[pos_++];
            char hi = lo;
            if (!eof() && peek() == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] != ']') {
                ++pos_;
                hi = text_[pos_++];
            }
            SymbolId lo_id = symbol_at(lo, pos_ - 1);
            SymbolId hi_id = symbol_at(hi, pos_ - 1);
            if (lo_id > hi_id) throw ParseError("inverted class range", pos_ - 1);
            set.insert(lo_id, hi_id);
        }
        if (eof()) throw ParseError("unmatched '['", open);
        ++pos_;
        if (set.empty()) throw ParseError("empty character class", open);
        return make_edge(std::move(set));
    }

    Fragment make_edge(SymbolSet set) {
        StateId s = nfa_.add_state();
        StateId t = nfa_.add_state();
        nfa_.add_transition(s, std::move(set), t);
        return {s, t};
    }

    SymbolId symbol_at(char c, std::size_t at) const {
        auto id = nfa_.alphabet().find(std::string_view(&c, 1));
        if (!id) throw ParseError(std::string("symbol '") + c + "' not in alphabet", at);
        return *id;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Automaton nfa_;
};

inline Automaton regex_to_nfa(std::string_view text, const Alphabet& alphabet) {
    return RegexParser(text, alphabet).parse();
}

}  // namespace fax
