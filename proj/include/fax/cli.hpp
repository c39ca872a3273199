#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fax/automaton_io.hpp"
#include "fax/bench.hpp"
#include "fax/report.hpp"

namespace fax::cli {

/// Exit codes: 0 success with a complete result, 1 input error or failed
/// verification, 2 incomplete result (budget ran out).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIncomplete = 2;

struct InputOptions {
    std::string automaton_file;
    std::string regex_text;
    std::string regex_file;
    std::string alphabet_spec = "a-z";
};

struct QueryOptions {
    std::string word_text;
    std::string bounds_text = "1:1";
    std::string target = "axp";
    bool warm_start = false;
    bool minimum_hs = false;
    std::uint64_t budget_ms = 600'000;  // default per-run timeout
    std::uint64_t node_budget = 0;      // 0 = library default
    std::string format = "text";
    bool verbose = false;
};

inline void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--automaton-file", in.automaton_file, "automaton in fax-automaton v1 format");
    cmd->add_option("--regex", in.regex_text, "regular expression over --alphabet");
    cmd->add_option("--regex-file", in.regex_file,
                    "file with one regular expression per line (union)");
    cmd->add_option("--alphabet", in.alphabet_spec,
                    "alphabet for regex input, e.g. 'a-z' or 'U,D,L,R'")
        ->capture_default_str();
}

inline void add_query_options(CLI::App* cmd, QueryOptions& q, bool with_modes) {
    cmd->add_option("--word", q.word_text, "input word to explain")->required();
    cmd->add_option("--bounds", q.bounds_text, "replacement bounds: 1:1, 1:inf or 0:inf")
        ->capture_default_str();
    if (with_modes) {
        cmd->add_option("--target", q.target, "explanation type to target: axp or cxp")
            ->capture_default_str();
        cmd->add_flag("--warm-start", q.warm_start,
                      "preload duals with all singleton contrastive explanations");
        cmd->add_flag("--minimum-hs", q.minimum_hs, "draw minimum-cardinality candidates");
    }
    cmd->add_option("--budget-ms", q.budget_ms, "wall-clock budget in milliseconds")
        ->capture_default_str();
    cmd->add_option("--node-budget", q.node_budget, "node cap per inclusion query");
    cmd->add_option("--format", q.format, "output format: text or json")->capture_default_str();
    cmd->add_flag("-v,--verbose", q.verbose, "dump the final hitting-set clauses to stderr");
}

inline Automaton load_input(const InputOptions& in) {
    int sources = (in.automaton_file.empty() ? 0 : 1) + (in.regex_text.empty() ? 0 : 1) +
                  (in.regex_file.empty() ? 0 : 1);
    if (sources != 1)
        throw FormatError(
            "exactly one input source among --automaton-file, --regex and --regex-file is "
            "required");
    if (!in.automaton_file.empty()) return load_automaton(in.automaton_file);
    Alphabet alphabet = Alphabet::parse(in.alphabet_spec);
    if (!in.regex_text.empty()) return regex_to_nfa(in.regex_text, alphabet);
    return load_regex_lines(in.regex_file, alphabet);
}

inline Bounds parse_bounds(const std::string& text) {
    auto b = Bounds::parse(text);
    if (!b) throw FormatError("--bounds must be one of 1:1, 1:inf, 0:inf");
    return *b;
}

inline EnumOptions make_enum_options(const QueryOptions& q) {
    if (q.target != "axp" && q.target != "cxp")
        throw FormatError("--target must be axp or cxp");
    EnumOptions opts;
    opts.target_axp = q.target == "axp";
    opts.warm_start = q.warm_start;
    opts.minimum_hs = q.minimum_hs;
    opts.time_budget = std::chrono::milliseconds(q.budget_ms);
    if (q.node_budget > 0) opts.node_budget = q.node_budget;
    return opts;
}

/// The automaton whose accepted language the explanation algorithms work
/// against: the input itself for accepted words, its complement otherwise.
inline Automaton dispatch_target(const Automaton& a, const Word& w, std::size_t determinize_cap) {
    if (a.accepts(w)) return a;
    const Automaton det = a.is_deterministic() ? a : determinize(a, determinize_cap);
    return complement(det);
}

inline IndexSet parse_positions(const std::string& text) {
    std::vector<std::size_t> positions;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        if (comma > start) positions.push_back(std::stoull(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return IndexSet(std::move(positions));
}

inline void dump_clauses(const ExplanationReport& report, std::ostream& err, bool target_axp) {
    HittingSetProblem problem(report.word.size());
    const auto& duals = target_axp ? report.cxps : report.axps;
    const auto& targets = target_axp ? report.axps : report.cxps;
    for (const IndexSet& d : duals)
        if (!d.empty()) problem.add_set_to_hit(d);
    for (const IndexSet& t : targets) problem.block_upset(t);
    err << problem.dump_clauses();
}

inline std::string mode_name(const EnumOptions& opts) {
    if (!opts.target_axp) return "cxp";
    return opts.warm_start ? "axp+warm" : "axp";
}

inline void emit_timing_header(std::ostream& out) {
    out << "instance,mode,time_ms,n_axps,n_cxps,complete\n";
}

inline void emit_timing_row(std::ostream& out, const std::string& instance,
                            const ExplanationReport& report, const EnumOptions& opts) {
    out << instance << ',' << mode_name(opts) << ',' << static_cast<long long>(report.stats.time_ms)
        << ',' << report.axps.size() << ',' << report.cxps.size() << ','
        << (report.stats.complete ? "true" : "false") << '\n';
}

inline std::uint64_t env_seed_or(std::uint64_t fallback) {
    const char* env = std::getenv("FAX_SEED");
    if (!env || !*env) return fallback;
    return std::strtoull(env, nullptr, 10);
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"formal abductive/contrastive explanations for finite-automaton decisions"};
    app.name("fax");
    app.require_subcommand(1);

    InputOptions input;
    QueryOptions query;

    CLI::App* cmd_explain = app.add_subcommand("explain", "enumerate all explanations and the attribution");
    add_input_options(cmd_explain, input);
    add_query_options(cmd_explain, query, true);

    CLI::App* cmd_axp = app.add_subcommand("axp", "extract one abductive explanation");
    add_input_options(cmd_axp, input);
    add_query_options(cmd_axp, query, false);

    CLI::App* cmd_cxp = app.add_subcommand("cxp", "extract one contrastive explanation");
    add_input_options(cmd_cxp, input);
    add_query_options(cmd_cxp, query, false);

    CLI::App* cmd_ffa = app.add_subcommand("ffa", "compute the feature attribution");
    add_input_options(cmd_ffa, input);
    add_query_options(cmd_ffa, query, true);

    CLI::App* cmd_check = app.add_subcommand("check", "verify a claimed explanation");
    add_input_options(cmd_check, input);
    add_query_options(cmd_check, query, false);
    std::string claimed_axp, claimed_cxp;
    cmd_check->add_option("--axp", claimed_axp, "claimed abductive explanation, e.g. 1,4");
    cmd_check->add_option("--cxp", claimed_cxp, "claimed contrastive explanation, e.g. 2,4");

    CLI::App* cmd_maze = app.add_subcommand("gen-maze", "generate a maze benchmark instance");
    std::size_t maze_height = 10, maze_width = 10;
    double wall_prob = 1.0 / 3.0;
    std::uint64_t maze_seed = 1;
    std::string maze_out;
    bool maze_sweep = false, maze_run = false;
    cmd_maze->add_option("--height", maze_height)->capture_default_str();
    cmd_maze->add_option("--width", maze_width)->capture_default_str();
    cmd_maze->add_option("--wall-prob", wall_prob)->capture_default_str();
    cmd_maze->add_option("--seed", maze_seed)->capture_default_str();
    cmd_maze->add_option("--out", maze_out, "write the maze dump to this file");
    cmd_maze->add_flag("--sweep", maze_sweep, "list the benchmark dimension sweep and exit");
    cmd_maze->add_flag("--run", maze_run, "explain every rejected path, emitting timing rows");
    cmd_maze->add_option("--bounds", query.bounds_text)->capture_default_str();
    cmd_maze->add_option("--target", query.target)->capture_default_str();
    cmd_maze->add_flag("--warm-start", query.warm_start);
    cmd_maze->add_flag("--minimum-hs", query.minimum_hs);
    cmd_maze->add_option("--budget-ms", query.budget_ms)->capture_default_str();

    CLI::App* cmd_corpus = app.add_subcommand("gen-corpus", "generate a random-substring benchmark");
    CorpusSpec corpus_spec;
    double corpus_scale = 1.0;
    std::string corpus_dir;
    bool corpus_run = false;
    cmd_corpus->add_option("--length", corpus_spec.word_length)->capture_default_str();
    cmd_corpus->add_option("--count", corpus_spec.word_count)->capture_default_str();
    cmd_corpus->add_option("--alphabet-size", corpus_spec.alphabet_size)->capture_default_str();
    cmd_corpus->add_option("--seed", corpus_spec.seed)->capture_default_str();
    cmd_corpus->add_option("--scale", corpus_scale, "test-word length scale factor")
        ->capture_default_str();
    cmd_corpus->add_option("--out-dir", corpus_dir, "write automaton and word files here");
    cmd_corpus->add_flag("--run", corpus_run, "explain every test word, emitting timing rows");
    cmd_corpus->add_option("--bounds", query.bounds_text)->capture_default_str();
    cmd_corpus->add_option("--target", query.target)->capture_default_str();
    cmd_corpus->add_flag("--warm-start", query.warm_start);
    cmd_corpus->add_flag("--minimum-hs", query.minimum_hs);
    cmd_corpus->add_option("--budget-ms", query.budget_ms)->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (app.got_subcommand(cmd_explain) || app.got_subcommand(cmd_ffa)) {
            Automaton a = load_input(input);
            Word word = Word::parse(a.alphabet(), query.word_text);
            Bounds bounds = parse_bounds(query.bounds_text);
            EnumOptions opts = make_enum_options(query);
            ExplanationReport report = explain(a, word, bounds, opts);
            if (query.verbose) dump_clauses(report, err, opts.target_axp);
            if (app.got_subcommand(cmd_ffa)) {
                if (query.format == "json") {
                    nlohmann::json j = nlohmann::json::object();
                    for (const auto& [pos, value] : report.ffa) j[std::to_string(pos)] = value;
                    out << j.dump(2) << "\n";
                } else {
                    for (const auto& [pos, value] : report.ffa)
                        out << pos << ": " << value << "\n";
                }
            } else if (query.format == "json") {
                out << report_to_json(report).dump(2) << "\n";
            } else {
                out << report_to_text(report);
            }
            return report.stats.complete ? kExitOk : kExitIncomplete;
        }

        if (app.got_subcommand(cmd_axp) || app.got_subcommand(cmd_cxp)) {
            Automaton a = load_input(input);
            Word word = Word::parse(a.alphabet(), query.word_text);
            Bounds bounds = parse_bounds(query.bounds_text);
            const bool accepted = a.accepts(word);
            Automaton target = dispatch_target(a, word, kDefaultDeterminizeCap);
            InclusionOptions inc;
            if (query.node_budget > 0) inc.node_budget = query.node_budget;
            InclusionChecker checker(target, inc);
            nlohmann::json j;
            j["word"] = word.str();
            j["decision"] = accepted ? "accept" : "reject";
            if (app.got_subcommand(cmd_axp)) {
                IndexSet result =
                    extract_axp_with(checker, IndexSet::full(word.size()), word, bounds);
                j["positions"] = result.positions();
                j["pattern"] = build_axp_pattern(result, word, bounds).render();
                if (query.format == "json") {
                    out << j.dump(2) << "\n";
                } else {
                    out << "positions: " << result.str() << "\n"
                        << "pattern: " << j["pattern"].get<std::string>() << "\n";
                }
            } else {
                auto result =
                    extract_cxp_with(checker, IndexSet::full(word.size()), word, bounds);
                if (!result) {
                    j["positions"] = nullptr;
                    if (query.format == "json") {
                        out << j.dump(2) << "\n";
                    } else {
                        out << "no contrastive explanation exists\n";
                    }
                } else {
                    j["positions"] = result->positions();
                    j["pattern"] = build_cxp_pattern(*result, word, bounds).render();
                    if (query.format == "json") {
                        out << j.dump(2) << "\n";
                    } else {
                        out << "positions: " << result->str() << "\n"
                            << "pattern: " << j["pattern"].get<std::string>() << "\n";
                    }
                }
            }
            return kExitOk;
        }

        if (app.got_subcommand(cmd_check)) {
            if (claimed_axp.empty() == claimed_cxp.empty())
                throw FormatError("check requires exactly one of --axp or --cxp");
            Automaton a = load_input(input);
            Word word = Word::parse(a.alphabet(), query.word_text);
            Bounds bounds = parse_bounds(query.bounds_text);
            Automaton target = dispatch_target(a, word, kDefaultDeterminizeCap);
            const bool is_axp = !claimed_axp.empty();
            IndexSet claimed = parse_positions(is_axp ? claimed_axp : claimed_cxp);
            ChainPattern pattern = is_axp ? build_axp_pattern(claimed, word, bounds)
                                          : build_cxp_pattern(claimed, word, bounds);
            InclusionResult inclusion = is_included(pattern, target);
            const bool ok = is_axp ? inclusion.included() : !inclusion.included();
            if (ok) {
                out << "OK (inclusion verified)\n";
                return kExitOk;
            }
            if (is_axp) {
                out << "FAIL: pattern admits counterexample "
                    << inclusion.counterexample->str() << "\n";
            } else {
                out << "FAIL: pattern contains no counterexample\n";
            }
            return kExitError;
        }

        if (app.got_subcommand(cmd_maze)) {
            if (maze_sweep) {
                for (const auto& [h, w] : maze_dimension_sweep()) out << h << "x" << w << "\n";
                return kExitOk;
            }
            MazeInstance maze = gen_maze(maze_height, maze_width, wall_prob, env_seed_or(maze_seed));
            if (!maze_out.empty()) {
                std::ofstream file(maze_out, std::ios::binary);
                if (!file) throw FormatError("cannot write '" + maze_out + "'");
                file << maze_to_text(maze);
            } else if (!maze_run) {
                out << maze_to_text(maze);
            }
            if (maze_run) {
                Bounds bounds = parse_bounds(query.bounds_text);
                EnumOptions opts = make_enum_options(query);
                emit_timing_header(out);
                bool all_complete = true;
                for (std::size_t i = 0; i < maze.rejected_paths.size(); ++i) {
                    ExplanationReport report =
                        explain(maze.dfa, maze.rejected_paths[i], bounds, opts);
                    std::string instance = "maze-" + std::to_string(maze.height) + "x" +
                                           std::to_string(maze.width) + "-s" +
                                           std::to_string(maze.seed) + "-r" + std::to_string(i + 1);
                    emit_timing_row(out, instance, report, opts);
                    all_complete = all_complete && report.stats.complete;
                }
                return all_complete ? kExitOk : kExitIncomplete;
            }
            return kExitOk;
        }

        if (app.got_subcommand(cmd_corpus)) {
            corpus_spec.seed = env_seed_or(corpus_spec.seed);
            CorpusInstance corpus = gen_corpus_automaton(corpus_spec, corpus_scale);
            if (!corpus_dir.empty()) {
                save_automaton(corpus.automaton, corpus_dir + "/automaton.aut");
                auto write_words = [&](const std::string& name, const std::vector<Word>& words) {
                    std::ofstream file(corpus_dir + "/" + name, std::ios::binary);
                    if (!file) throw FormatError("cannot write '" + corpus_dir + "/" + name + "'");
                    for (const Word& w : words) file << w.str() << "\n";
                };
                write_words("members.txt", corpus.members);
                write_words("accepted.txt", corpus.accepted);
                write_words("rejected.txt", corpus.rejected);
            }
            std::string base = "corpus-l" + std::to_string(corpus_spec.word_length) + "-m" +
                               std::to_string(corpus_spec.word_count) + "-d" +
                               std::to_string(corpus_spec.alphabet_size) + "-s" +
                               std::to_string(corpus_spec.seed);
            if (corpus_run) {
                Bounds bounds = parse_bounds(query.bounds_text);
                EnumOptions opts = make_enum_options(query);
                emit_timing_header(out);
                bool all_complete = true;
                auto run_words = [&](const std::vector<Word>& words, const char* tag) {
                    for (std::size_t i = 0; i < words.size(); ++i) {
                        ExplanationReport report = explain(corpus.automaton, words[i], bounds, opts);
                        emit_timing_row(out,
                                        base + "-" + tag + "-" + std::to_string(i + 1) + "-len" +
                                            std::to_string(words[i].size()),
                                        report, opts);
                        all_complete = all_complete && report.stats.complete;
                    }
                };
                run_words(corpus.accepted, "acc");
                run_words(corpus.rejected, "rej");
                return all_complete ? kExitOk : kExitIncomplete;
            }
            if (corpus_dir.empty()) {
                out << base << "\n";
                for (const Word& w : corpus.members) out << "member: " << w.str() << "\n";
                out << "accepted: " << corpus.accepted.size()
                    << " words, rejected: " << corpus.rejected.size() << " words\n";
            }
            return kExitOk;
        }
    } catch (const BudgetExceededError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace fax::cli
