#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fax/explain.hpp"

namespace fax {

/// Structured form of a report. Positions are 1-based throughout; pattern
/// renderings accompany the raw index sets for human reading.
inline nlohmann::json report_to_json(const ExplanationReport& r) {
    nlohmann::json j;
    j["word"] = r.word.str();
    j["decision"] = to_string(r.decision);
    j["bounds"] = r.bounds.str();

    auto sets_to_json = [](const std::vector<IndexSet>& sets) {
        nlohmann::json arr = nlohmann::json::array();
        for (const IndexSet& s : sets) arr.push_back(s.positions());
        return arr;
    };
    j["axps"] = sets_to_json(r.axps);
    j["cxps"] = sets_to_json(r.cxps);

    nlohmann::json axp_patterns = nlohmann::json::array();
    for (const IndexSet& s : r.axps)
        axp_patterns.push_back(build_axp_pattern(s, r.word, r.bounds).render());
    j["axp_patterns"] = axp_patterns;
    nlohmann::json cxp_patterns = nlohmann::json::array();
    for (const IndexSet& s : r.cxps)
        cxp_patterns.push_back(build_cxp_pattern(s, r.word, r.bounds).render());
    j["cxp_patterns"] = cxp_patterns;

    nlohmann::json ffa = nlohmann::json::object();
    for (const auto& [pos, value] : r.ffa) ffa[std::to_string(pos)] = value;
    j["ffa"] = ffa;

    j["stats"] = {{"iterations", r.stats.iterations},
                  {"inclusion_checks", r.stats.inclusion_checks},
                  {"time_ms", r.stats.time_ms},
                  {"complete", r.stats.complete}};
    return j;
}

inline std::string report_to_text(const ExplanationReport& r) {
    std::ostringstream out;
    out << "word: " << r.word.str() << "\n";
    out << "decision: " << to_string(r.decision) << "\n";
    out << "bounds: " << r.bounds.str() << "\n";
    out << "axps (" << r.axps.size() << "):\n";
    for (const IndexSet& s : r.axps)
        out << "  " << s.str() << "  " << build_axp_pattern(s, r.word, r.bounds).render() << "\n";
    out << "cxps (" << r.cxps.size() << "):\n";
    for (const IndexSet& s : r.cxps)
        out << "  " << s.str() << "  " << build_cxp_pattern(s, r.word, r.bounds).render() << "\n";
    out << "ffa:\n";
    for (const auto& [pos, value] : r.ffa)
        out << "  " << pos << ": " << std::fixed << std::setprecision(3) << value << "\n";
    out << "stats: iterations=" << r.stats.iterations
        << " inclusion_checks=" << r.stats.inclusion_checks << " time_ms=" << std::fixed
        << std::setprecision(1) << r.stats.time_ms
        << " complete=" << (r.stats.complete ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace fax
