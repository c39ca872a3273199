#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fax/automaton.hpp"
#include "fax/regex.hpp"
#include "fax/rng.hpp"

namespace fax {

/// Deterministic, complete automaton accepting exactly the strings that
/// contain some member of `patterns` as a substring. Classic multi-pattern
/// matcher: trie plus failure links, with accepting states made absorbing.
inline Automaton substring_union_automaton(const std::vector<Word>& patterns,
                                           const Alphabet& alphabet) {
    if (patterns.empty()) throw FormatError("substring automaton needs at least one pattern");
    for (const Word& p : patterns)
        if (p.alphabet() != alphabet)
            throw AlphabetMismatchError("pattern alphabet differs from target alphabet");

    const std::size_t sigma = alphabet.size();
    std::vector<std::vector<int>> child(1, std::vector<int>(sigma, -1));
    std::vector<char> terminal(1, false);

    for (const Word& p : patterns) {
        int node = 0;
        for (SymbolId sym : p.symbols()) {
            if (child[node][sym] < 0) {
                child[node][sym] = static_cast<int>(child.size());
                child.emplace_back(sigma, -1);
                terminal.push_back(false);
            }
            node = child[node][sym];
        }
        terminal[node] = true;
    }

    // Failure links in breadth-first order; goto totalized along the way.
    std::vector<int> fail(child.size(), 0);
    std::vector<char> accepting(terminal.begin(), terminal.end());
    std::queue<int> bfs;
    std::vector<std::vector<int>> delta(child.size(), std::vector<int>(sigma, 0));
    for (SymbolId sym = 0; sym < sigma; ++sym) {
        int c = child[0][sym];
        if (c >= 0) {
            fail[c] = 0;
            delta[0][sym] = c;
            bfs.push(c);
        }
    }
    while (!bfs.empty()) {
        int node = bfs.front();
        bfs.pop();
        if (accepting[fail[node]]) accepting[node] = true;
        for (SymbolId sym = 0; sym < sigma; ++sym) {
            int c = child[node][sym];
            if (c >= 0) {
                fail[c] = delta[fail[node]][sym];
                delta[node][sym] = c;
                bfs.push(c);
            } else {
                delta[node][sym] = delta[fail[node]][sym];
            }
        }
    }

    Automaton a(alphabet, child.size());
    a.mark_initial(0);
    for (std::size_t s = 0; s < child.size(); ++s) {
        if (accepting[s]) a.mark_accepting(static_cast<StateId>(s));
        std::map<int, SymbolSet> by_target;
        for (SymbolId sym = 0; sym < sigma; ++sym) {
            // A match can never be lost again: accepting states absorb.
            int target = accepting[s] ? static_cast<int>(s) : delta[s][sym];
            by_target[target].insert(sym, sym);
        }
        for (auto& [dst, syms] : by_target)
            a.add_transition(static_cast<StateId>(s), std::move(syms), static_cast<StateId>(dst));
    }
    return a;
}

struct CorpusSpec {
    std::size_t word_length = 5;
    std::size_t word_count = 1;
    std::size_t alphabet_size = 2;
    std::uint64_t seed = 0;
};

struct CorpusInstance {
    Alphabet alphabet;
    std::vector<Word> members;
    Automaton automaton;
    std::vector<Word> accepted;
    std::vector<Word> rejected;
};

/// Seed-deterministic random-substring benchmark: `word_count` random member
/// words of `word_length` symbols, the automaton for "contains some member",
/// and ten accepted plus ten rejected test words whose lengths run through
/// 100..1000 scaled by `length_scale`. Accepted words embed a member by
/// construction; rejected words are rejection-sampled and fail with an
/// explicit error when the alphabet is too small to reject anything.
inline CorpusInstance gen_corpus_automaton(const CorpusSpec& spec, double length_scale = 1.0) {
    if (spec.word_length < 1 || spec.word_count < 1)
        throw FormatError("corpus spec requires positive word length and count");
    if (spec.alphabet_size < 2 || spec.alphabet_size > 26)
        throw FormatError("corpus alphabet size must be in 2..26");
    if (length_scale <= 0) throw FormatError("length scale must be positive");

    Alphabet alphabet = Alphabet::from_range('a', static_cast<char>('a' + spec.alphabet_size - 1));
    SplitMix64 rng(spec.seed);

    auto random_word = [&](std::size_t len) {
        std::vector<SymbolId> syms(len);
        for (std::size_t i = 0; i < len; ++i)
            syms[i] = static_cast<SymbolId>(rng.below(spec.alphabet_size));
        return Word(alphabet, std::move(syms));
    };

    std::vector<Word> members;
    for (std::size_t i = 0; i < spec.word_count; ++i) members.push_back(random_word(spec.word_length));
    Automaton automaton = substring_union_automaton(members, alphabet);

    CorpusInstance out{alphabet, std::move(members), std::move(automaton), {}, {}};
    for (std::size_t i = 1; i <= 10; ++i) {
        std::size_t len = std::max<std::size_t>(
            spec.word_length,
            static_cast<std::size_t>(std::llround(static_cast<double>(i) * 100.0 * length_scale)));
        Word accepted = random_word(len);
        std::size_t member = rng.below(out.members.size());
        std::size_t offset = rng.below(len - spec.word_length + 1);
        std::vector<SymbolId> syms = accepted.symbols();
        for (std::size_t k = 0; k < spec.word_length; ++k)
            syms[offset + k] = out.members[member].at(k);
        out.accepted.emplace_back(alphabet, std::move(syms));

        bool found = false;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Word candidate = random_word(len);
            if (!out.automaton.accepts(candidate)) {
                out.rejected.push_back(std::move(candidate));
                found = true;
                break;
            }
        }
        if (!found)
            throw GenerationError("could not sample a rejected word of length " +
                                  std::to_string(len) + "; alphabet too small");
    }
    return out;
}

struct MazeInstance {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::vector<bool>> walls;  // true = wall cell
    Automaton dfa;
    Word solution_path;
    std::vector<Word> rejected_paths;
    std::uint64_t seed = 0;
};

inline Alphabet maze_alphabet() { return Alphabet({"U", "D", "L", "R"}); }

/// Random grid maze encoded as a DFA over the moves U, D, L, R. Walls fall
/// independently per cell; the top-left start and bottom-right exit are
/// forced open and wall layouts are resampled until the maze is solvable.
/// The DFA has one state per open cell plus a dead sink: moves into walls or
/// off the grid fall into the sink, and the exit cell is absorbing and
/// accepting. Rejected paths perturb the solution in 1..5 positions and are
/// verified rejected.
inline MazeInstance gen_maze(std::size_t height, std::size_t width, double wall_prob,
                             std::uint64_t seed) {
    if (height < 2 || width < 2) throw FormatError("maze needs height and width >= 2");
    if (wall_prob < 0 || wall_prob >= 1) throw FormatError("wall probability must be in [0, 1)");

    Alphabet alphabet = maze_alphabet();
    SplitMix64 rng(seed);
    // Move order matches the alphabet: U, D, L, R.
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};

    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::vector<bool>> walls(height, std::vector<bool>(width, false));
        for (std::size_t r = 0; r < height; ++r)
            for (std::size_t c = 0; c < width; ++c) walls[r][c] = rng.unit() < wall_prob;
        walls[0][0] = false;
        walls[height - 1][width - 1] = false;

        // Shortest solution by breadth-first search, move order U, D, L, R.
        std::vector<std::vector<int>> parent_move(height, std::vector<int>(width, -1));
        std::vector<std::vector<bool>> seen(height, std::vector<bool>(width, false));
        std::queue<std::pair<std::size_t, std::size_t>> bfs;
        bfs.emplace(0, 0);
        seen[0][0] = true;
        while (!bfs.empty()) {
            auto [r, c] = bfs.front();
            bfs.pop();
            for (int m = 0; m < 4; ++m) {
                long long nr = static_cast<long long>(r) + dr[m];
                long long nc = static_cast<long long>(c) + dc[m];
                if (nr < 0 || nc < 0 || nr >= static_cast<long long>(height) ||
                    nc >= static_cast<long long>(width))
                    continue;
                if (walls[nr][nc] || seen[nr][nc]) continue;
                seen[nr][nc] = true;
                parent_move[nr][nc] = m;
                bfs.emplace(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc));
            }
        }
        if (!seen[height - 1][width - 1]) continue;  // unsolvable; resample walls

        std::vector<SymbolId> moves;
        std::size_t r = height - 1;
        std::size_t c = width - 1;
        while (r != 0 || c != 0) {
            int m = parent_move[r][c];
            moves.push_back(static_cast<SymbolId>(m));
            r = static_cast<std::size_t>(static_cast<long long>(r) - dr[m]);
            c = static_cast<std::size_t>(static_cast<long long>(c) - dc[m]);
        }
        std::reverse(moves.begin(), moves.end());

        // One DFA state per open cell (row-major), then the dead sink.
        std::vector<std::vector<int>> cell_state(height, std::vector<int>(width, -1));
        int states = 0;
        for (std::size_t rr = 0; rr < height; ++rr)
            for (std::size_t cc = 0; cc < width; ++cc)
                if (!walls[rr][cc]) cell_state[rr][cc] = states++;
        const int sink = states++;

        Automaton dfa(alphabet, static_cast<std::size_t>(states));
        dfa.mark_initial(static_cast<StateId>(cell_state[0][0]));
        const int exit_state = cell_state[height - 1][width - 1];
        dfa.mark_accepting(static_cast<StateId>(exit_state));
        for (std::size_t rr = 0; rr < height; ++rr) {
            for (std::size_t cc = 0; cc < width; ++cc) {
                int s = cell_state[rr][cc];
                if (s < 0) continue;
                std::map<int, SymbolSet> by_target;
                for (int m = 0; m < 4; ++m) {
                    int target;
                    if (s == exit_state) {
                        target = exit_state;  // absorbing accept
                    } else {
                        long long nr = static_cast<long long>(rr) + dr[m];
                        long long nc = static_cast<long long>(cc) + dc[m];
                        bool open = nr >= 0 && nc >= 0 && nr < static_cast<long long>(height) &&
                                    nc < static_cast<long long>(width) && !walls[nr][nc];
                        target = open ? cell_state[nr][nc] : sink;
                    }
                    by_target[target].insert(static_cast<SymbolId>(m), static_cast<SymbolId>(m));
                }
                for (auto& [dst, syms] : by_target)
                    dfa.add_transition(static_cast<StateId>(s), std::move(syms),
                                       static_cast<StateId>(dst));
            }
        }
        dfa.add_transition(static_cast<StateId>(sink), SymbolSet::all(alphabet),
                           static_cast<StateId>(sink));

        MazeInstance maze{height, width, std::move(walls), std::move(dfa),
                          Word(alphabet, moves), {}, seed};

        const std::size_t len = moves.size();
        for (std::size_t changes = 1; changes <= std::min<std::size_t>(5, len); ++changes) {
            bool made = false;
            for (int tries = 0; tries < 1000 && !made; ++tries) {
                std::vector<SymbolId> candidate = moves;
                std::vector<std::size_t> positions;
                while (positions.size() < changes) {
                    std::size_t p = rng.below(len);
                    bool dup = false;
                    for (std::size_t q : positions) dup = dup || q == p;
                    if (!dup) positions.push_back(p);
                }
                for (std::size_t p : positions)
                    candidate[p] = static_cast<SymbolId>((candidate[p] + 1 + rng.below(3)) % 4);
                Word path(alphabet, candidate);
                if (!maze.dfa.accepts(path)) {
                    maze.rejected_paths.push_back(std::move(path));
                    made = true;
                }
            }
            if (!made)
                throw GenerationError("could not perturb the solution into a rejected path");
        }
        return maze;
    }
    throw GenerationError("no solvable maze found after 10000 wall layouts");
}

/// All (height, width) pairs of the benchmark sweep: heights 10..50, widths
/// height..50; 861 sizes in total.
inline std::vector<std::pair<std::size_t, std::size_t>> maze_dimension_sweep() {
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    for (std::size_t h = 10; h <= 50; ++h)
        for (std::size_t w = h; w <= 50; ++w) sizes.emplace_back(h, w);
    return sizes;
}

/// Maze dump, version 1: header, dimensions, seed, wall grid (`#` wall,
/// `.` open), then the solution and every rejected path as move strings.
inline std::string maze_to_text(const MazeInstance& maze) {
    std::ostringstream out;
    out << "fax-maze v1\n";
    out << "height: " << maze.height << "\n";
    out << "width: " << maze.width << "\n";
    out << "seed: " << maze.seed << "\n";
    for (std::size_t r = 0; r < maze.height; ++r) {
        for (std::size_t c = 0; c < maze.width; ++c) out << (maze.walls[r][c] ? '#' : '.');
        out << "\n";
    }
    out << "solution: " << maze.solution_path.str() << "\n";
    for (const Word& path : maze.rejected_paths) out << "rejected: " << path.str() << "\n";
    return out.str();
}

/// Union NFA of one regular expression per line; blank lines and `#`
/// comments are skipped. A fresh shared initial state reaches every
/// per-line automaton through one epsilon edge. The union is deliberately
/// not determinized; downstream inclusion checks run on it directly.
inline Automaton load_regex_lines(const std::string& path,
                                  const Alphabet& alphabet = Alphabet::from_range('a', 'z')) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read '" + path + "'");

    std::vector<Automaton> parts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t last = line.find_last_not_of(" \t");
        try {
            parts.push_back(regex_to_nfa(line.substr(first, last - first + 1), alphabet));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    if (parts.empty()) throw FormatError("'" + path + "' contains no regular expressions");

    std::size_t total = 1;
    for (const Automaton& part : parts) total += part.state_count();
    Automaton all(alphabet, total);
    all.mark_initial(0);
    StateId offset = 1;
    for (const Automaton& part : parts) {
        for (StateId s = 0; s < part.state_count(); ++s) {
            for (const Automaton::Arc& arc : part.arcs_from(s))
                all.add_transition(offset + s, arc.symbols, offset + arc.dst);
            for (StateId t : part.epsilons_from(s)) all.add_epsilon(offset + s, offset + t);
            if (part.is_accepting(s)) all.mark_accepting(offset + s);
        }
        for (StateId s : part.initial_states()) all.add_epsilon(0, offset + s);
        offset += static_cast<StateId>(part.state_count());
    }
    return all;
}

inline Alphabet dna_alphabet() { return Alphabet({"A", "C", "G", "T"}); }

/// Loads (sequence, motif) pairs from two-column whitespace-separated text
/// over the nucleotide alphabet A, C, G, T.
inline std::vector<std::pair<Word, Word>> load_motif_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read '" + path + "'");

    Alphabet alphabet = dna_alphabet();
    std::vector<std::pair<Word, Word>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream iss(line);
        std::string sequence, motif, extra;
        if (!(iss >> sequence)) continue;  // blank line
        if (sequence[0] == '#') continue;
        if (!(iss >> motif))
            throw FormatError("line " + std::to_string(line_no) + ": missing motif column");
        try {
            pairs.emplace_back(Word::parse(alphabet, sequence), Word::parse(alphabet, motif));
        } catch (const UnknownSymbolError&) {
            throw FormatError("line " + std::to_string(line_no) + ": invalid nucleotide");
        }
    }
    return pairs;
}

}  // namespace fax
