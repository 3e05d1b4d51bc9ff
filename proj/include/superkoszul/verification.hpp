#pragma once

#include "superkoszul/scenario.hpp"

namespace superkoszul {

inline constexpr const char* kToolVersion = "superkoszul 1.0.0";

/// Deterministic verification outcome. Timings are kept for the text
/// rendering only; the JSON form is byte-identical for a fixed
/// scenario, seed and flags.
struct VerificationReport {
    std::uint64_t scenario_hash = 0;
    std::string tool_version = kToolVersion;

    struct Entry {
        std::string name;
        bool pass = false;
        std::size_t residual_terms = 0;
        std::string residual_sample;
        double seconds = 0.0;
    };
    std::vector<Entry> entries;

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

/// Names understood by run_checks, in canonical order.
std::vector<std::string> known_checks();

/// Runs the requested checks (empty: the scenario's battery, or all)
/// and assembles a report sorted by check name. Respects
/// SUPERKOSZUL_THREADS for check-level parallelism.
VerificationReport run_checks(const Scenario& sc, std::vector<std::string> checks, int max_arity);

VerificationReport cmd_check_master(const Scenario& sc);
VerificationReport cmd_verify_all(const Scenario& sc, int max_arity,
                                  const std::vector<std::string>& checks = {});

/// Evaluates one named operation on serialized series arguments and
/// returns the canonical JSON series.
nlohmann::ordered_json cmd_compute(const Scenario& sc, const std::string& what,
                                   const std::vector<nlohmann::json>& args);

}  // namespace superkoszul
