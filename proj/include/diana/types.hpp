#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>

namespace diana {

using SiteId = std::string;
using UserId = std::string;
using JobId = std::uint64_t;
using BurstId = std::uint64_t;

// Directed link between two sites. bandwidth is bits/s, rtt seconds,
// loss_prob in (0, 1], mss bytes.
struct NetworkLink {
    SiteId src;
    SiteId dst;
    double bandwidth = 0.0;
    double loss_prob = 0.0;
    double rtt = 0.0;
    double mss = 1460.0;
};

struct SiteState {
    SiteId id;
    double capability = 0.0;  // work-units per second, per processor-independent site rate
    std::size_t queue_length = 0;
    double load = 0.0;  // fraction of processors busy, in [0, 1]
    int processors = 1;
    std::set<std::string> hosted_data;
};

struct CostWeights {
    double w5 = 0.5;  // queue/capability weight (first term)
    double w6 = 0.5;  // queue/capability weight (second term)
    double w7 = 1.0;  // site-load weight
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double ref_bandwidth = 1e8;   // bits/s, scales loss/bandwidth into a comparable penalty
    double min_loss_prob = 1e-6;  // smaller configured losses are clamped up to this
};

struct JobDataSpec {
    double input_bytes = 0.0;
    double output_bytes = 0.0;
    double executable_bytes = 0.0;
    SiteId input_source;
    SiteId output_sink;
    SiteId executable_source;
};

struct CostBreakdown {
    double network = 0.0;  // dimensionless penalty
    double compute = 0.0;
    double dtc = 0.0;  // data transfer cost, seconds
    double total = 0.0;
};

enum class JobState { pending, queued, transferring, running, done };

const char* to_string(JobState s);

struct Job {
    JobId id = 0;
    UserId owner;
    BurstId burst = 0;
    int processors_required = 1;
    double compute_demand = 0.0;  // work-units
    JobDataSpec data;
    double submit_time = 0.0;
    double enqueue_time = 0.0;
    int current_level = 0;
    bool remigratable = true;  // a job may be exported at most once
    JobState state = JobState::pending;
};

// Multilevel feedback queue policy. Level 0 is served first.
struct PriorityPolicy {
    int num_levels = 3;
    int base_level = 1;
    std::size_t job_threshold = 10;  // jobs per window a user may submit before decay
    double time_threshold = 60.0;    // seconds; window length and aging quantum
    double decay_per_excess_job = 1.0;
    double aging_step = 1.0;  // levels regained per waited time_threshold
    bool sjf_ordering = true;
};

// Per-user submission frequency, tracked over tumbling windows of
// time_threshold seconds.
struct UserStats {
    UserId owner;
    std::size_t jobs_in_window = 0;
    double window_start = 0.0;
};

}  // namespace diana
