#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fax/errors.hpp"

namespace fax {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;

/// Finite, ordered set of symbol names interned to dense ids 0..size()-1.
/// Immutable after construction and cheap to copy (shared representation),
/// so words and automata can carry their alphabet by value.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols)
        : data_(std::make_shared<const Data>(make_data(std::move(symbols)))) {}

    /// Alphabet of the single characters lo..hi inclusive.
    static Alphabet from_range(char lo, char hi) {
        std::vector<std::string> names;
        for (char c = lo;; ++c) {
            names.emplace_back(1, c);
            if (c == hi) break;
        }
        return Alphabet(std::move(names));
    }

    /// Parses a comma-separated list of symbol names where a token of the
    /// form `c-z` (single characters) expands to the whole range.
    static Alphabet parse(std::string_view text) {
        std::vector<std::string> names;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            std::string_view tok = text.substr(
                start, comma == std::string_view::npos ? text.size() - start : comma - start);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            if (tok.size() == 3 && tok[1] == '-') {
                if (tok[0] > tok[2])
                    throw FormatError("invalid symbol range '" + std::string(tok) + "'");
                for (char c = tok[0];; ++c) {
                    names.emplace_back(1, c);
                    if (c == tok[2]) break;
                }
            } else if (!tok.empty()) {
                names.emplace_back(tok);
            }
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return Alphabet(std::move(names));
    }

    std::size_t size() const { return data_->names.size(); }

    const std::string& name(SymbolId id) const { return data_->names.at(id); }

    std::optional<SymbolId> find(std::string_view name) const {
        auto it = data_->index.find(std::string(name));
        if (it == data_->index.end()) return std::nullopt;
        return it->second;
    }

    SymbolId id(std::string_view name) const {
        auto found = find(name);
        if (!found) throw UnknownSymbolError("symbol '" + std::string(name) + "' not in alphabet");
        return *found;
    }

    /// True when every symbol name is a single character, which enables the
    /// compact textual renderings (words written without separators).
    bool single_char() const { return data_->single_char; }

    bool operator==(const Alphabet& other) const {
        return data_ == other.data_ || data_->names == other.data_->names;
    }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    struct Data {
        std::vector<std::string> names;
        std::unordered_map<std::string, SymbolId> index;
        bool single_char = true;
    };

    static Data make_data(std::vector<std::string> symbols) {
        if (symbols.empty()) throw FormatError("alphabet must be non-empty");
        Data d;
        d.names = std::move(symbols);
        for (SymbolId i = 0; i < d.names.size(); ++i) {
            const std::string& n = d.names[i];
            if (n.empty() || n.find_first_of(" \t,-@") != std::string::npos)
                throw FormatError("invalid symbol name '" + n + "'");
            if (!d.index.emplace(n, i).second)
                throw FormatError("duplicate symbol '" + n + "'");
            if (n.size() != 1) d.single_char = false;
        }
        return d;
    }

    std::shared_ptr<const Data> data_;
};

/// Set of symbol ids kept as sorted, disjoint, non-adjacent inclusive ranges.
/// This is the canonical form used on every transition.
class SymbolSet {
public:
    using Range = std::pair<SymbolId, SymbolId>;

    SymbolSet() = default;

    static SymbolSet single(SymbolId id) { return range(id, id); }

    static SymbolSet range(SymbolId lo, SymbolId hi) {
        SymbolSet s;
        s.insert(lo, hi);
        return s;
    }

    static SymbolSet all(const Alphabet& alphabet) {
        return range(0, static_cast<SymbolId>(alphabet.size() - 1));
    }

    void insert(SymbolId lo, SymbolId hi) {
        if (lo > hi) throw FormatError("empty symbol range");
        // Merge with any range overlapping or adjacent to [lo, hi].
        std::vector<Range> merged;
        merged.reserve(ranges_.size() + 1);
        bool placed = false;
        for (const Range& r : ranges_) {
            if (r.second + 1 < lo && r.second + 1 != 0) {
                merged.push_back(r);
            } else if (hi + 1 < r.first && hi + 1 != 0) {
                if (!placed) {
                    merged.emplace_back(lo, hi);
                    placed = true;
                }
                merged.push_back(r);
            } else {
                lo = std::min(lo, r.first);
                hi = std::max(hi, r.second);
            }
        }
        if (!placed) merged.emplace_back(lo, hi);
        ranges_ = std::move(merged);
    }

    void merge(const SymbolSet& other) {
        for (const Range& r : other.ranges_) insert(r.first, r.second);
    }

    bool contains(SymbolId id) const {
        for (const Range& r : ranges_) {
            if (id < r.first) return false;
            if (id <= r.second) return true;
        }
        return false;
    }

    bool empty() const { return ranges_.empty(); }

    /// Number of symbols covered.
    std::size_t count() const {
        std::size_t n = 0;
        for (const Range& r : ranges_) n += r.second - r.first + 1;
        return n;
    }

    const std::vector<Range>& ranges() const { return ranges_; }

    bool intersects(const SymbolSet& other) const {
        auto it = other.ranges_.begin();
        for (const Range& r : ranges_) {
            while (it != other.ranges_.end() && it->second < r.first) ++it;
            if (it == other.ranges_.end()) return false;
            if (it->first <= r.second) return true;
        }
        return false;
    }

    /// Symbols of the alphabet not in this set.
    SymbolSet complement_in(const Alphabet& alphabet) const {
        SymbolSet out;
        SymbolId next = 0;
        for (const Range& r : ranges_) {
            if (r.first > next) out.insert(next, r.first - 1);
            next = r.second + 1;
        }
        if (next < alphabet.size()) out.insert(next, static_cast<SymbolId>(alphabet.size() - 1));
        return out;
    }

    bool operator==(const SymbolSet& other) const { return ranges_ == other.ranges_; }
    bool operator!=(const SymbolSet& other) const { return !(*this == other); }

private:
    std::vector<Range> ranges_;
};

/// A finite sequence of symbol ids over a fixed alphabet.
class Word {
public:
    explicit Word(Alphabet alphabet, std::vector<SymbolId> symbols = {})
        : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
        for (SymbolId s : symbols_)
            if (s >= alphabet_.size()) throw UnknownSymbolError("symbol id out of range");
    }

    /// Parses text into a word. For single-character alphabets each character
    /// is one symbol; otherwise tokens are separated by spaces.
    static Word parse(const Alphabet& alphabet, std::string_view text) {
        std::vector<SymbolId> ids;
        if (alphabet.single_char()) {
            ids.reserve(text.size());
            for (char c : text) ids.push_back(alphabet.id(std::string_view(&c, 1)));
        } else {
            std::size_t start = 0;
            while (start < text.size()) {
                std::size_t space = text.find(' ', start);
                if (space == std::string_view::npos) space = text.size();
                if (space > start) ids.push_back(alphabet.id(text.substr(start, space - start)));
                start = space + 1;
            }
        }
        return Word(alphabet, std::move(ids));
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    /// 0-based symbol access.
    SymbolId at(std::size_t i) const { return symbols_.at(i); }

    const std::vector<SymbolId>& symbols() const { return symbols_; }
    const Alphabet& alphabet() const { return alphabet_; }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (i > 0 && !alphabet_.single_char()) out += ' ';
            out += alphabet_.name(symbols_[i]);
        }
        return out;
    }

    bool operator==(const Word& other) const {
        return alphabet_ == other.alphabet_ && symbols_ == other.symbols_;
    }
    bool operator!=(const Word& other) const { return !(*this == other); }

private:
    Alphabet alphabet_;
    std::vector<SymbolId> symbols_;
};

}  // namespace fax
