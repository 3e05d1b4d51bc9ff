#include "superkoszul/scenario.hpp"

#include <fstream>

namespace superkoszul {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SolutionSigns Scenario::solution_signs() const {
    SolutionSigns signs;
    for (auto& m : mutations)
        if (m == "flip-solution-middle") signs.middle = -signs.middle;
    return signs;
}

Scenario scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ArgumentError("scenario document must be a JSON object");
    Scenario sc;
    sc.schema_version = doc.value("schema_version", 0);
    if (sc.schema_version != 1)
        throw ArgumentError("unsupported scenario schema_version");
    sc.name = doc.value("name", std::string{});

    if (!doc.contains("coordinates") || !doc.at("coordinates").is_array() ||
        doc.at("coordinates").empty())
        throw ArgumentError("scenario needs a non-empty coordinates list");
    for (const auto& c : doc.at("coordinates")) {
        std::string name = c.at("name").get<std::string>();
        int parity = c.at("parity").get<int>();
        if (parity != 0 && parity != 1) throw ArgumentError("coordinate parity must be 0 or 1");
        sc.coordinates.emplace_back(std::move(name), parity);
    }

    if (doc.contains("truncation"))
        for (auto& [grading, cap] : doc.at("truncation").items())
            sc.truncation[grading] = cap.get<int>();
    sc.seed = doc.value("seed", 0ull);
    if (doc.contains("test_battery"))
        for (const auto& c : doc.at("test_battery")) sc.checks.push_back(c.get<std::string>());
    if (doc.contains("mutations")) {
        for (const auto& m : doc.at("mutations")) {
            std::string name = m.get<std::string>();
            if (name != "flip-solution-middle")
                throw ArgumentError("unknown mutation: " + name);
            sc.mutations.push_back(std::move(name));
        }
    }

    sc.chart = make_chart(sc.coordinates, sc.truncation);
    if (!doc.contains("poisson_tensor"))
        throw ArgumentError("scenario needs a poisson_tensor");
    sc.P = series_from_json(sc.chart.ctx, sc.chart.trunc, doc.at("poisson_tensor"));
    if (!sc.P.is_zero() && !sc.P.is_even())
        throw ParityError("scenario Poisson tensor must be even");

    sc.hash = fnv1a64(nlohmann::json(doc).dump());
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("scenario parse error: ") + e.what());
    }
    Scenario sc = scenario_from_json(doc);
    if (sc.name.empty()) sc.name = path;
    return sc;
}

}  // namespace superkoszul
