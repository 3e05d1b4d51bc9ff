#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "superkoszul/series.hpp"

namespace superkoszul {

/// One verified identity: name, exact residual summary, verdict.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::size_t residual_terms = 0;
    std::string residual_sample;
};

struct Report {
    std::vector<CheckResult> checks;

    void add(std::string name, const SuperSeries& residual) {
        CheckResult r;
        r.name = std::move(name);
        r.pass = residual.is_zero();
        r.residual_terms = residual.term_count();
        if (!r.pass) r.residual_sample = residual.str();
        checks.push_back(std::move(r));
    }

    void add_flag(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, pass ? 0u : 1u, std::move(detail)});
    }

    void merge(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    void sort_by_name() {
        std::stable_sort(checks.begin(), checks.end(),
                         [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    }

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

}  // namespace superkoszul
