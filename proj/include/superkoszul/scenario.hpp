#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superkoszul/microformal.hpp"
#include "superkoszul/serialization.hpp"

namespace superkoszul {

/// One self-contained verification problem: a chart, a Poisson tensor,
/// truncation caps, a deterministic seed and the set of checks to run.
/// Mutations deliberately break a pinned convention so the suite can
/// prove it is sensitive to it.
struct Scenario {
    int schema_version = 1;
    std::string name;
    std::vector<std::pair<std::string, int>> coordinates;
    std::map<std::string, int> truncation;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;          // empty: run everything
    std::vector<std::string> mutations;       // e.g. "flip-solution-middle"
    std::uint64_t hash = 0;                   // FNV-1a of the canonical document

    SuperChart chart;
    SuperSeries P;

    SolutionSigns solution_signs() const;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const std::string& data);

Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace superkoszul
