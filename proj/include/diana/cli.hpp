#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diana::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_simulation = 3;
inline constexpr int exit_io = 4;

struct SweepSpec {
    std::string param;                // dotted scenario path, e.g. workload.bursts_per_user
    std::vector<std::string> values;  // one simulated variant per value
};

struct Options {
    std::string scenario_path;
    std::string out_dir;  // already resolved against DIANA_SCHED_OUT by the caller
    bool write_csv = true;
    bool write_json = true;
    std::optional<std::uint64_t> seed;  // overrides the scenario's seed
    std::optional<SweepSpec> sweep;
    bool overwrite = false;
    int verbosity = 1;    // 0 quiet, 1 normal, 2 verbose
    double bucket = 0.0;  // series bucket seconds; 0 picks makespan/40
};

// "path=v1,v2,..." -> SweepSpec; malformed text raises a usage error.
SweepSpec parse_sweep(const std::string& text);

// Resolution order for the output directory: explicit flag, DIANA_SCHED_OUT,
// then "./out".
std::string resolve_out_dir(const std::string& flag_value);

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_run(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace diana::cli
