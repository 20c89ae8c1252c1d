#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"

namespace cli = argvar::cli;

namespace {

void print_summary(const cli::SuiteSummary& s) {
    std::printf("suite %s: n=%d holds=%d fails=%d hypothesis_errors=%d "
                "median_log10_slack=%.6g\n",
                s.kind.c_str(), s.n, s.holds, s.fails, s.hypothesis_errors,
                s.median_log10_slack);
}

int run_cmd(const std::string& scenario_path, const std::string& out_dir,
            const std::string& format, double tol) {
    cli::Scenario s = cli::parse_scenario(scenario_path);
    if (tol >= 0.0) s.check_tol = tol;
    cli::Report r = cli::run_scenario(s);
    cli::emit_report(r, format, out_dir);
    for (const auto& rec : r.records) {
        if (rec.result)
            std::printf("%s: %s (lhs=%.6g rhs=%.6g)\n", rec.check.c_str(),
                        rec.result->holds ? "holds" : "FAILS", rec.result->lhs,
                        rec.result->rhs);
        else
            std::printf("%s: %s (%s)\n", rec.check.c_str(), rec.status.c_str(),
                        rec.message.c_str());
    }
    return cli::exit_code_for({r});
}

int suite_cmd(const std::string& kind, uint64_t seed, int n,
              const std::string& out_dir) {
    cli::SuiteSummary s = cli::run_suite(seed, n, kind);
    cli::emit_suite(s, out_dir);
    print_summary(s);
    return cli::exit_code_for(s.reports);
}

int check_all_cmd(uint64_t seed, const std::string& out_dir) {
    int worst = 0;
    for (const auto& [kind, n] : cli::check_all_battery()) {
        cli::SuiteSummary s = cli::run_suite(seed, n, kind);
        cli::emit_suite(s, out_dir + "/" + kind);
        print_summary(s);
        worst = std::max(worst, cli::exit_code_for(s.reports));
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"argvar: numerical checks for argument-variation and "
                 "Bernstein-index inequalities"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, format = "json", kind;
    double tol = -1.0;
    uint64_t seed = 0;
    int n = 1;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--format", format, "Report format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--tol", tol, "Relative tolerance for 'holds'");

    auto* suite = app.add_subcommand("suite", "Generate and run a random suite");
    suite->add_option("--kind", kind, "Check kind")->required();
    suite->add_option("--seed", seed, "Random seed")->required();
    suite->add_option("--n", n, "Number of scenarios")->required()
        ->check(CLI::PositiveNumber);
    suite->add_option("--out", out_dir, "Output directory")->required();

    auto* all = app.add_subcommand("check-all", "Run the full acceptance battery");
    all->add_option("--seed", seed, "Random seed")->required();
    all->add_option("--out", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_cmd(scenario_path, out_dir, format, tol);
        if (suite->parsed()) return suite_cmd(kind, seed, n, out_dir);
        return check_all_cmd(seed, out_dir);
    } catch (const argvar::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const argvar::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const argvar::HypothesisError& e) {
        std::fprintf(stderr, "hypothesis error: %s\n", e.what());
        return 2;
    } catch (const argvar::Error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
}
