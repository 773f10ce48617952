#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "diana/cli.hpp"
#include "diana/errors.hpp"

namespace {

struct CommonFlags {
    std::string scenario;
    std::string out;
    std::string format = "csv,json";
    std::string sweep;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool overwrite = false;
    bool quiet = false;
    bool verbose = false;
    double bucket = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_outputs) {
    cmd->add_option("-s,--scenario", flags.scenario, "Scenario JSON file")->required();
    cmd->add_flag("-q,--quiet", flags.quiet, "Print nothing but errors");
    cmd->add_flag("-v,--verbose", flags.verbose, "Print extra progress detail");
    if (!with_outputs) return;
    cmd->add_option("-o,--out", flags.out,
                    "Output directory (default: $DIANA_SCHED_OUT, then ./out)");
    cmd->add_option("--format", flags.format, "Comma list of csv,json (default both)");
    cmd->add_option("--seed", flags.seed, "Override the scenario seed")
        ->check(CLI::NonNegativeNumber)
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_flag("--overwrite", flags.overwrite, "Replace existing output files");
    cmd->add_option("--bucket", flags.bucket,
                    "Series bucket in simulated seconds (default: makespan/40)");
}

int build_options(const CommonFlags& flags, bool want_sweep, diana::cli::Options& opt,
                  std::ostream& err) {
    opt.scenario_path = flags.scenario;
    opt.out_dir = diana::cli::resolve_out_dir(flags.out);
    opt.overwrite = flags.overwrite;
    opt.verbosity = flags.quiet ? 0 : (flags.verbose ? 2 : 1);
    opt.bucket = flags.bucket;
    if (flags.seed_set) opt.seed = flags.seed;

    opt.write_csv = false;
    opt.write_json = false;
    std::size_t start = 0;
    while (start <= flags.format.size()) {
        std::size_t comma = flags.format.find(',', start);
        std::string token = flags.format.substr(start, comma - start);
        if (token == "csv")
            opt.write_csv = true;
        else if (token == "json")
            opt.write_json = true;
        else if (!token.empty()) {
            err << "error: unknown format '" << token << "' (expected csv or json)\n";
            return diana::cli::exit_usage;
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!opt.write_csv && !opt.write_json) {
        err << "error: --format selected no outputs\n";
        return diana::cli::exit_usage;
    }

    if (!flags.sweep.empty()) {
        try {
            opt.sweep = diana::cli::parse_sweep(flags.sweep);
        } catch (const diana::Error& e) {
            err << "error: " << e.what() << "\n";
            return diana::cli::exit_usage;
        }
    } else if (want_sweep) {
        err << "error: compare needs --sweep param.path=v1,v2,...\n";
        return diana::cli::exit_usage;
    }
    return diana::cli::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-driven multi-site grid scheduling simulator"};
    app.require_subcommand(1);

    CommonFlags validate_flags, run_flags, compare_flags;
    CLI::App* validate = app.add_subcommand("validate", "Check a scenario and list every problem");
    add_common(validate, validate_flags, false);
    CLI::App* run = app.add_subcommand("run", "Simulate a scenario and write logs and metrics");
    add_common(run, run_flags, true);
    CLI::App* compare =
        app.add_subcommand("compare", "Run scenario variants from a sweep and tabulate them");
    add_common(compare, compare_flags, true);
    compare->add_option("--sweep", compare_flags.sweep,
                        "param.path=value1,value2,... (one run per value)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return diana::cli::exit_usage;
    }

    diana::cli::Options opt;
    if (validate->parsed()) {
        int rc = build_options(validate_flags, false, opt, std::cerr);
        if (rc != diana::cli::exit_ok) return rc;
        return diana::cli::cmd_validate(opt, std::cout, std::cerr);
    }
    if (run->parsed()) {
        int rc = build_options(run_flags, false, opt, std::cerr);
        if (rc != diana::cli::exit_ok) return rc;
        return diana::cli::cmd_run(opt, std::cout, std::cerr);
    }
    int rc = build_options(compare_flags, true, opt, std::cerr);
    if (rc != diana::cli::exit_ok) return rc;
    return diana::cli::cmd_compare(opt, std::cout, std::cerr);
}
