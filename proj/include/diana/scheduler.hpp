#pragma once

#include <optional>
#include <vector>

#include "diana/cost_model.hpp"
#include "diana/event_log.hpp"
#include "diana/types.hpp"

namespace diana {

// Everything the meta-scheduler sees when it quotes a burst or weighs an
// export: current site states plus the static topology and weights.
struct GridView {
    std::vector<SiteState> sites;
    const Topology* topology = nullptr;
    CostWeights weights;
};

struct Placement {
    BurstId burst = 0;
    SiteId site;
    CostBreakdown cost;  // summed over the burst at the chosen site
    std::vector<std::pair<SiteId, CostBreakdown>> per_candidate;  // ascending site id
};

struct LittleEstimate {
    double arrival_rate = 0.0;      // R: jobs/s entering the site queue
    double avg_wait = 0.0;          // W: mean queue wait of jobs that began service
    double predicted_queue = 0.0;   // N = R * W
    double service_capacity = 0.0;  // jobs/s the site completes at current service times
};

struct ExportPolicy {
    double overload_factor = 5.0;  // queue-length threshold = processors * factor
    std::optional<double> overload_threshold;  // absolute override when set
};

struct ExportAssignment {
    JobId job = 0;
    SiteId to;
    double local_total = 0.0;
    double remote_total = 0.0;
};

// N = R * W and its rearrangements. Solving for R or W with a zero divisor is
// refused as an undefined estimate.
double littles_n(double arrival_rate, double avg_wait);
double littles_r(double queue_length, double avg_wait);
double littles_w(double queue_length, double arrival_rate);

// Quote every site able to run the burst (enough processors for the widest
// job) and pick the cheapest total, ascending site id breaking exact ties.
Placement select_site(const std::vector<Job>& burst, const GridView& view);

// Overloaded when predicted arrivals outrun completions, or the queue has
// grown past the policy threshold.
bool should_export(const SiteState& site, const LittleEstimate& est, const ExportPolicy& policy);

// For each still-remigratable job, find the cheapest other site; keep the move
// only if it is strictly cheaper than staying. Marks chosen jobs exported.
std::vector<ExportAssignment> export_jobs(std::vector<Job>& jobs, const SiteId& from,
                                          const GridView& view);

// Trailing-window R/W/N for one site read off the event log: R from enqueues
// in the window, W from jobs whose service began in it, capacity from
// completions (falling back to the whole log, then to "never overloaded").
LittleEstimate estimate_arrivals(const EventLog& log, const SiteId& site, double window);
LittleEstimate estimate_arrivals(const EventLog& log, const SiteId& site, double window,
                                 double now);

}  // namespace diana
