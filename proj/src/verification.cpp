#include "superkoszul/verification.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "superkoszul/bv.hpp"

namespace superkoszul {

namespace {

SuperSeries random_poly(const SuperChart& ch, const std::vector<int>& vars, int parity,
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
        if (term.is_zero()) continue;
        if (parity >= 0 && term.parity() != parity) continue;
        out += term;
        ++made;
    }
    return out;
}

std::vector<SuperSeries> random_batch(const Scenario& sc, const std::vector<int>& vars,
                                      int parity, int count, int max_deg, std::uint64_t salt) {
    std::mt19937_64 eng(sc.seed * 0x9e3779b97f4a7c15ull + salt);
    std::vector<SuperSeries> out;
    for (int i = 0; i < count; ++i) out.push_back(random_poly(sc.chart, vars, parity, max_deg, 3, eng));
    return out;
}

std::vector<int> form_vars(const SuperChart& ch) {
    std::vector<int> vars = ch.x;
    vars.insert(vars.end(), ch.dx.begin(), ch.dx.end());
    return vars;
}

std::vector<int> multivector_vars(const SuperChart& ch) {
    std::vector<int> vars = ch.x;
    vars.insert(vars.end(), ch.xstar.begin(), ch.xstar.end());
    return vars;
}

HomotopyPoissonStructure validated_structure(const Scenario& sc) {
    HomotopyPoissonStructure hp{sc.chart, sc.P};
    Report r = hp.validate();
    if (!r.all_pass()) throw StateError("master equation fails; dependent check skipped");
    return hp;
}

Report check_master(const Scenario& sc, int) {
    HomotopyPoissonStructure hp{sc.chart, sc.P};
    return hp.validate();
}

Report check_lichnerowicz(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    Report report;
    auto vars = multivector_vars(sc.chart);
    auto evens = random_batch(sc, vars, 0, 5, 3, 11);
    auto odds = random_batch(sc, vars, 1, 5, 3, 12);
    int i = 0;
    for (auto* batch : {&evens, &odds})
        for (auto& sigma : *batch)
            report.add("lichnerowicz/d2/" + std::to_string(i++),
                       lichnerowicz(hp, lichnerowicz(hp, sigma)));
    return report;
}

Report check_kk(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    SuperSeries K = koszul_master_hamiltonian(hp);
    Report report;
    report.add("kk/(K,K)", canonical_poisson(K, K, sc.chart.ps_tstar_pitm()));
    return report;
}

Report check_diagram(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    return verify_diagram(hp, random_batch(sc, form_vars(sc.chart), -1, 50, 4, 21));
}

Report check_jacobi(const Scenario& sc, int max_arity) {
    auto hp = validated_structure(sc);
    auto evens = random_batch(sc, form_vars(sc.chart), 0, max_arity + 1, 3, 31);
    auto odds = random_batch(sc, form_vars(sc.chart), 1, max_arity + 1, 3, 32);
    std::vector<SuperSeries> args;
    for (std::size_t i = 0; i < evens.size(); ++i) {
        args.push_back(evens[i]);
        args.push_back(odds[i]);
    }
    return verify_generalized_jacobi(higher_koszul_family(hp), max_arity, args);
}

Report check_hj_adjoint(const Scenario& sc, int) {
    return hamilton_jacobi_for_adjoint_anchor(validated_structure(sc));
}

Report check_linfty_morphism(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    auto samples = random_batch(sc, form_vars(sc.chart), 0, 8, 3, 41);
    return verify_linfty_morphism(hp, samples, sc.solution_signs());
}

Report check_routes(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    Report report;
    auto samples = random_batch(sc, form_vars(sc.chart), 0, 20, 3, 51);
    for (std::size_t i = 0; i < samples.size(); ++i)
        report.add("routes/" + std::to_string(i),
                   koszul_to_schouten_map(hp, samples[i]) -
                       koszul_to_schouten_via_pullback(hp, samples[i]));
    return report;
}

Report check_bv_brackets(const Scenario& sc, int max_arity) {
    auto hp = validated_structure(sc);
    const SuperChart& ch = sc.chart;
    std::vector<SuperSeries> gens;
    for (int a = 0; a < ch.dim(); ++a) gens.push_back(ch.var(ch.x[static_cast<size_t>(a)]));
    for (int a = 0; a < ch.dim(); ++a) gens.push_back(ch.var(ch.dx[static_cast<size_t>(a)]));
    int cap = std::min(max_arity, 3);
    Report report;
    int idx = 0;
    std::vector<std::vector<SuperSeries>> tuples;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        tuples.push_back({gens[i]});
        for (std::size_t j = i; j < gens.size() && cap >= 2; ++j) {
            tuples.push_back({gens[i], gens[j]});
            for (std::size_t k = j; k < gens.size() && cap >= 3; k += 2)
                tuples.push_back({gens[i], gens[j], gens[k]});
        }
    }
    for (auto& t : tuples)
        report.add("bv/" + std::to_string(idx++),
                   classical_brackets_from_delta(hp, t) - higher_koszul_bracket(hp, t));
    return report;
}

Report check_symbol(const Scenario& sc, int) {
    auto hp = validated_structure(sc);
    Report report;
    report.add("symbol/K", principal_symbol(hp) - koszul_master_hamiltonian(hp));
    return report;
}

using CheckFn = Report (*)(const Scenario&, int);

const std::vector<std::pair<std::string, CheckFn>>& check_table() {
    static const std::vector<std::pair<std::string, CheckFn>> table = {
        {"bv-brackets", check_bv_brackets},
        {"diagram", check_diagram},
        {"hj-adjoint", check_hj_adjoint},
        {"jacobi", check_jacobi},
        {"kk", check_kk},
        {"lichnerowicz", check_lichnerowicz},
        {"linfty-morphism", check_linfty_morphism},
        {"master", check_master},
        {"routes", check_routes},
        {"symbol", check_symbol},
    };
    return table;
}

int thread_cap() {
    const char* env = std::getenv("SUPERKOSZUL_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

}  // namespace

std::vector<std::string> known_checks() {
    std::vector<std::string> names;
    for (auto& [name, fn] : check_table()) names.push_back(name);
    return names;
}

bool VerificationReport::all_pass() const {
    for (auto& e : entries)
        if (!e.pass) return false;
    return true;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    std::ostringstream hash;
    hash << std::hex << scenario_hash;
    nlohmann::ordered_json out;
    out["tool_version"] = tool_version;
    out["scenario_hash"] = hash.str();
    out["pass"] = all_pass();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (auto& e : entries) {
        nlohmann::ordered_json c;
        c["name"] = e.name;
        c["pass"] = e.pass;
        c["residual_terms"] = e.residual_terms;
        if (!e.pass) c["residual_sample"] = e.residual_sample;
        checks.push_back(std::move(c));
    }
    out["checks"] = std::move(checks);
    return out;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << tool_version << "  scenario " << std::hex << scenario_hash << std::dec << "\n";
    for (auto& e : entries) {
        os << (e.pass ? "PASS" : "FAIL") << "  " << e.name << "  (" << e.seconds << " s)";
        if (!e.pass && !e.residual_sample.empty()) os << "  residual: " << e.residual_sample;
        os << "\n";
    }
    os << (all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
    return os.str();
}

VerificationReport run_checks(const Scenario& sc, std::vector<std::string> checks, int max_arity) {
    if (checks.empty()) checks = sc.checks.empty() ? known_checks() : sc.checks;
    std::vector<CheckFn> fns;
    for (auto& name : checks) {
        CheckFn fn = nullptr;
        for (auto& [n, f] : check_table())
            if (n == name) fn = f;
        if (!fn) throw ArgumentError("unknown check: " + name);
        fns.push_back(fn);
    }

    std::vector<std::vector<VerificationReport::Entry>> slots(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < checks.size(); i = next.fetch_add(1)) {
            auto start = std::chrono::steady_clock::now();
            std::vector<VerificationReport::Entry> out;
            try {
                Report r = fns[i](sc, max_arity);
                for (auto& c : r.checks)
                    out.push_back({c.name, c.pass, c.residual_terms, c.residual_sample, 0.0});
                if (r.checks.empty())
                    out.push_back({checks[i], true, 0, "", 0.0});
            } catch (const std::exception& e) {
                out.push_back({checks[i] + "/error", false, 1, e.what(), 0.0});
            }
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (auto& e : out) e.seconds = secs / static_cast<double>(out.size());
            slots[i] = std::move(out);
        }
    };
    int threads = std::min<int>(thread_cap(), static_cast<int>(checks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    VerificationReport report;
    report.scenario_hash = sc.hash;
    for (auto& slot : slots)
        report.entries.insert(report.entries.end(), slot.begin(), slot.end());
    std::stable_sort(report.entries.begin(), report.entries.end(),
                     [](const auto& a, const auto& b) { return a.name < b.name; });
    return report;
}

VerificationReport cmd_check_master(const Scenario& sc) { return run_checks(sc, {"master"}, 4); }

VerificationReport cmd_verify_all(const Scenario& sc, int max_arity,
                                  const std::vector<std::string>& checks) {
    return run_checks(sc, checks, max_arity);
}

nlohmann::ordered_json cmd_compute(const Scenario& sc, const std::string& what,
                                   const std::vector<nlohmann::json>& args) {
    std::vector<SuperSeries> series;
    for (auto& a : args) series.push_back(series_from_json(sc.chart.ctx, sc.chart.trunc, a));
    auto hp = validated_structure(sc);
    auto one = [&]() -> const SuperSeries& {
        if (series.size() != 1) throw ArgumentError(what + " takes exactly one series argument");
        return series.front();
    };
    if (what == "koszul-bracket") {
        if (series.empty()) throw ArgumentError("koszul-bracket needs at least one argument");
        return series_to_json(higher_koszul_bracket(hp, series));
    }
    if (what == "lichnerowicz") return series_to_json(lichnerowicz(hp, one()));
    if (what == "pullback") return series_to_json(koszul_to_schouten_via_pullback(hp, one()));
    if (what == "morphism-image") return series_to_json(koszul_to_schouten_map(hp, one()));
    throw ArgumentError("unknown computation: " + what);
}

}  // namespace superkoszul
