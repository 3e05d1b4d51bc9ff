#pragma once

#include <random>
#include <vector>

#include "superkoszul/brackets.hpp"

namespace sktest {

using namespace superkoszul;

/// Random polynomial in the given variables, homogeneous of the
/// requested parity (parity = -1 means no constraint). Deterministic
/// for a fixed engine state.
inline SuperSeries random_series(const SuperChart& ch, const std::vector<int>& vars, int parity,
                                 int max_deg, int nterms, std::mt19937_64& eng) {
    std::uniform_int_distribution<int> deg_dist(0, max_deg);
    std::uniform_int_distribution<std::size_t> var_dist(0, vars.size() - 1);
    std::uniform_int_distribution<int> num_dist(-3, 3);
    std::uniform_int_distribution<int> den_dist(1, 3);
    SuperSeries out = ch.zero();
    int made = 0, attempts = 0;
    while (made < nterms && attempts < 200 * nterms) {
        ++attempts;
        int num = num_dist(eng);
        if (num == 0) continue;
        SuperSeries term = ch.constant(Rational(num, den_dist(eng)));
        int d = deg_dist(eng);
        for (int i = 0; i < d; ++i) term = term * ch.var(vars[var_dist(eng)]);
        if (term.is_zero()) continue;  // odd square or truncated away
        if (parity >= 0 && term.parity() != parity) continue;
        out += term;
        ++made;
    }
    return out;
}

/// Chart on R^2 (two even coordinates).
inline SuperChart chart_r2(const std::map<std::string, int>& caps = {}) {
    return make_chart({{"x1", 0}, {"x2", 0}}, caps);
}

/// Chart on R^{2|1}: x1, x2 even, th odd.
inline SuperChart chart_r21(const std::map<std::string, int>& caps = {}) {
    return make_chart({{"x1", 0}, {"x2", 0}, {"th", 1}}, caps);
}

}  // namespace sktest
