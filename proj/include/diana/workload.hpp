#pragma once

#include <cstdint>
#include <vector>

#include "diana/rng.hpp"
#include "diana/types.hpp"

namespace diana {

struct Distribution {
    enum class Kind { constant, uniform, exponential };
    Kind kind = Kind::constant;
    double value = 0.0;       // constant
    double lo = 0.0, hi = 0.0;  // uniform
    double mean = 0.0;        // exponential

    double sample(std::mt19937_64& rng) const;
    std::int64_t sample_int(std::mt19937_64& rng) const;  // uniform draws integers in [lo, hi]

    static Distribution constant(double v);
    static Distribution uniform(double lo, double hi);
    static Distribution exponential(double mean);
};

// Where each user's input dataset lives. single_home pins every input to one
// site; replicated places k copies per user (seeded) and each job reads a
// uniformly chosen replica.
struct DataPlacement {
    enum class Rule { single_home, replicated };
    Rule rule = Rule::single_home;
    SiteId home;       // single_home; empty means the first site
    int replicas = 1;  // replicated
};

struct WorkloadSpec {
    std::size_t users = 1;
    std::size_t bursts_per_user = 1;
    Distribution burst_size = Distribution::constant(1);
    Distribution inter_arrival = Distribution::constant(1.0);
    Distribution compute_demand = Distribution::constant(1.0);
    Distribution processors_required = Distribution::constant(1);
    Distribution input_bytes = Distribution::constant(0.0);
    Distribution output_bytes = Distribution::constant(0.0);
    Distribution executable_bytes = Distribution::constant(0.0);
    DataPlacement data_placement;
    // Make compute demand proportional to job width, so narrow jobs are also
    // short ones and width is an honest shortness signal.
    bool scale_demand_by_processors = false;
};

struct Burst {
    BurstId id = 0;
    UserId owner;
    double arrival_time = 0.0;
    std::vector<Job> jobs;
};

// Deterministic expansion of the spec: same spec, sites, and seed give the
// same bursts. Sites must be sorted by id; users are assigned home sites
// round-robin. Values are clamped into their invariants (demand > 0, sizes
// >= 0, 1 <= processors <= max_processors). The result is sorted by
// (arrival_time, burst id).
std::vector<Burst> generate_workload(const WorkloadSpec& spec, const std::vector<SiteId>& sites,
                                     int max_processors, std::uint64_t seed);

}  // namespace diana
