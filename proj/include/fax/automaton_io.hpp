#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fax/automaton.hpp"

namespace fax {

/// Textual automaton format, version 1:
///
///   fax-automaton v1
///   alphabet: a,b
///   states: 6
///   initial: 0
///   accepting: 5
///   0 a 1
///   0 b 2
///   2 @eps 5
///   4 c-z 5
///
/// One line per transition range; `@eps` marks an epsilon transition.
/// Output is canonical (sorted lines, merged ranges), so writing, parsing
/// and writing again reproduces the text bit-exactly.
inline std::string write_automaton(const Automaton& a) {
    std::ostringstream out;
    out << "fax-automaton v1\n";
    out << "alphabet: ";
    for (std::size_t i = 0; i < a.alphabet().size(); ++i) {
        if (i > 0) out << ',';
        out << a.alphabet().name(static_cast<SymbolId>(i));
    }
    out << "\nstates: " << a.state_count() << "\ninitial:";
    for (StateId s : a.initial_states()) out << ' ' << s;
    out << "\naccepting:";
    for (StateId s : a.accepting_states()) out << ' ' << s;
    out << '\n';

    std::vector<std::tuple<StateId, SymbolId, SymbolId, StateId>> lines;
    std::vector<std::pair<StateId, StateId>> eps_lines;
    for (StateId s = 0; s < a.state_count(); ++s) {
        for (const Automaton::Arc& arc : a.arcs_from(s))
            for (const SymbolSet::Range& r : arc.symbols.ranges())
                lines.emplace_back(s, r.first, r.second, arc.dst);
        for (StateId t : a.epsilons_from(s)) eps_lines.emplace_back(s, t);
    }
    std::sort(lines.begin(), lines.end());
    std::sort(eps_lines.begin(), eps_lines.end());

    for (const auto& [src, lo, hi, dst] : lines) {
        out << src << ' ' << a.alphabet().name(lo);
        if (hi != lo) out << '-' << a.alphabet().name(hi);
        out << ' ' << dst << '\n';
    }
    for (const auto& [src, dst] : eps_lines) out << src << " @eps " << dst << '\n';
    return out.str();
}

inline Automaton parse_automaton(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    auto expect_field = [&](const std::string& key) -> std::string {
        if (!next_line() || line.rfind(key, 0) != 0)
            throw ParseError("expected '" + key + "' line", line_no);
        return line.substr(key.size());
    };
    auto parse_ids = [&](const std::string& s) {
        std::vector<StateId> ids;
        std::istringstream iss(s);
        long long v;
        while (iss >> v) {
            if (v < 0) throw ParseError("negative state id", line_no);
            ids.push_back(static_cast<StateId>(v));
        }
        return ids;
    };

    if (!next_line() || line != "fax-automaton v1")
        throw ParseError("missing 'fax-automaton v1' header", line_no);
    Alphabet alphabet = Alphabet::parse(expect_field("alphabet: "));
    std::size_t states = std::stoull(expect_field("states: "));
    std::vector<StateId> initial = parse_ids(expect_field("initial:"));
    std::vector<StateId> accepting = parse_ids(expect_field("accepting:"));

    Automaton a(alphabet, states);
    for (StateId s : initial) a.mark_initial(s);
    for (StateId s : accepting) a.mark_accepting(s);

    while (next_line()) {
        std::istringstream iss(line);
        long long src, dst;
        std::string sym;
        if (!(iss >> src >> sym >> dst) || src < 0 || dst < 0)
            throw ParseError("malformed transition line", line_no);
        if (sym == "@eps") {
            a.add_epsilon(static_cast<StateId>(src), static_cast<StateId>(dst));
            continue;
        }
        std::size_t dash = sym.find('-');
        SymbolSet set;
        if (dash != std::string::npos) {
            SymbolId lo = alphabet.id(sym.substr(0, dash));
            SymbolId hi = alphabet.id(sym.substr(dash + 1));
            if (lo > hi) throw ParseError("inverted symbol range", line_no);
            set.insert(lo, hi);
        } else {
            set = SymbolSet::single(alphabet.id(sym));
        }
        a.add_transition(static_cast<StateId>(src), std::move(set), static_cast<StateId>(dst));
    }
    return a;
}

inline void save_automaton(const Automaton& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << write_automaton(a);
}

inline Automaton load_automaton(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_automaton(buf.str());
}

}  // namespace fax
