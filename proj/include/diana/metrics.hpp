#pragma once

#include <map>
#include <string>
#include <vector>

#include "diana/event_log.hpp"

namespace diana {

struct MetricsSummary {
    std::size_t submitted = 0;
    std::size_t completed = 0;
    double throughput = 0.0;  // completions per second of makespan
    double mean_turnaround = 0.0;
    double median_turnaround = 0.0;
    double p95_turnaround = 0.0;
    double mean_waiting = 0.0;   // queue time, staging excluded
    double mean_response = 0.0;  // arrival to execution start
    std::map<SiteId, double> cpu_utilization;
    std::size_t jobs_local = 0;     // completed without ever being exported
    std::size_t jobs_migrated = 0;  // exported at least once
    double littles_residual = 0.0;  // over the whole run
    double makespan = 0.0;
};

// Replays the log once, checking causality (arrival <= enqueue <= staging <=
// execution < completion, per job) as it goes; a malformed log raises a
// log-integrity error naming the first violating event.
MetricsSummary compute_metrics(const EventLog& log);

enum class SeriesKind {
    local_vs_migrated_over_time,  // cumulative completions split by origin
    exec_time_vs_job_count,       // one row: job count, mean turnaround, makespan
};

struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

SeriesTable series(const EventLog& log, SeriesKind kind, double bucket);

// Cross-run table: one row per workload size, one turnaround/makespan column
// pair per variant label, labels kept in first-appearance order.
SeriesTable exec_time_table(const std::vector<std::pair<std::string, MetricsSummary>>& runs);

// |N - R*W| / max(N, 1e-9) over the trailing window of the log, with N the
// time-averaged queue length, R the enqueue rate, and W the mean wait of jobs
// that left a queue in the window.
double littles_residual(const EventLog& log, double window);

void write_series_csv(const SeriesTable& table, std::ostream& os);

}  // namespace diana
