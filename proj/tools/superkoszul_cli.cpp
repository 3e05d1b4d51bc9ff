#include <CLI11.hpp>
#include <iostream>

#include "superkoszul/verification.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string format = "json";
    int max_arity = 4;
    std::vector<std::string> checks;
    std::vector<std::string> truncate;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--truncate", opts.truncate, "Override a truncation cap as GRADING=CAP");
    cmd->add_option("--seed", opts.seed, "Override the scenario seed");
}

superkoszul::Scenario load(const CommonOpts& opts) {
    using namespace superkoszul;
    Scenario sc = load_scenario(opts.scenario_path);
    if (opts.seed) sc.seed = *opts.seed;
    if (!opts.truncate.empty()) {
        for (const auto& spec : opts.truncate) {
            auto eq = spec.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ArgumentError("--truncate expects GRADING=CAP, got: " + spec);
            sc.truncation[spec.substr(0, eq)] = std::stoi(spec.substr(eq + 1));
        }
        // adjust the caps in place: rebuilding the chart would orphan P's context
        for (const auto& [grading, cap] : sc.truncation) sc.chart.trunc.caps[grading] = cap;
        sc.P = sc.P.with_policy(sc.chart.trunc);
    }
    return sc;
}

int emit(const superkoszul::VerificationReport& report, const std::string& format) {
    if (format == "text")
        std::cout << report.to_text();
    else
        std::cout << report.to_json().dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superkoszul: exact bracket calculus on supermanifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", superkoszul::kToolVersion);

    CommonOpts check_opts, verify_opts, compute_opts;

    CLI::App* check = app.add_subcommand("check-master", "Verify the homotopy Poisson master equation");
    add_common(check, check_opts);

    CLI::App* verify = app.add_subcommand("verify-all", "Run the full verification battery");
    add_common(verify, verify_opts);
    verify->add_option("--max-arity", verify_opts.max_arity, "Highest bracket arity to test")
        ->check(CLI::Range(1, 8));
    verify->add_option("--checks", verify_opts.checks, "Subset of checks to run")
        ->delimiter(',');

    CLI::App* compute = app.add_subcommand("compute", "Evaluate one operation on serialized series");
    add_common(compute, compute_opts);
    std::string what;
    compute->add_option("what", what, "Operation: koszul-bracket | lichnerowicz | pullback | morphism-image")
        ->required();
    // series arguments are taken from the remaining tokens verbatim: a
    // positional vector option would split bracketed JSON on commas
    compute->allow_extras();
    compute->footer("Remaining positional arguments are series as JSON strings.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (check->parsed())
            return emit(superkoszul::cmd_check_master(load(check_opts)), check_opts.format);
        if (verify->parsed())
            return emit(superkoszul::cmd_verify_all(load(verify_opts), verify_opts.max_arity,
                                                    verify_opts.checks),
                        verify_opts.format);
        std::vector<nlohmann::json> args;
        for (const auto& raw : compute->remaining()) args.push_back(nlohmann::json::parse(raw));
        std::cout << superkoszul::cmd_compute(load(compute_opts), what, args).dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
