#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diana/cost_model.hpp"
#include "diana/scheduler.hpp"
#include "diana/types.hpp"
#include "diana/workload.hpp"

namespace diana {

enum class SchedulerKind { diana, greedy_compute, random };

const char* to_string(SchedulerKind k);

struct Scenario {
    std::vector<SiteState> sites;  // sorted by id
    Topology topology;
    CostWeights weights;
    PriorityPolicy policy;
    WorkloadSpec workload;
    SchedulerKind scheduler_kind = SchedulerKind::diana;
    double duration = 0.0;
    std::uint64_t seed = 0;
    double aging_tick = 0.0;       // housekeeping cadence; loader defaults it
    double estimate_window = 0.0;  // trailing window for arrival estimates
    ExportPolicy export_policy;
    std::vector<std::string> warnings;  // non-fatal notes gathered at load time
};

struct Diagnostic {
    std::string path;  // e.g. "topology[2].bandwidth"
    std::string message;
};

// Structural and semantic checks for an already-built scenario. Returns every
// violation found, not just the first.
std::vector<Diagnostic> validate(const Scenario& scenario);

// Parse a scenario from JSON text. All parse and validation problems land in
// `diags`; the returned scenario is only meaningful when `diags` is empty.
Scenario scenario_from_json_text(const std::string& text, std::vector<Diagnostic>& diags);

// Same, reading from a file. Unreadable files raise an I/O error.
Scenario load_scenario(const std::string& path, std::vector<Diagnostic>& diags);

// Set a dotted path (e.g. "workload.bursts_per_user" or "scheduler") in the
// JSON text to a new scalar value, parsing it as number, bool, or string.
std::string apply_override_text(const std::string& json_text, const std::string& dotted_path,
                                const std::string& value);

// Canonical serialization (defaults materialized, keys sorted) and its FNV-1a
// 64-bit hex digest; two scenarios with equal digests run identically.
std::string canonical_json(const Scenario& scenario);
std::string scenario_digest(const Scenario& scenario);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace diana
