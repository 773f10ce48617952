#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diana/types.hpp"

namespace diana {

enum class EventKind {
    arrival,
    enqueue,
    placement,
    transfer_start,
    transfer_end,
    exec_start,
    exec_end,
    promotion,
    demotion,
    export_job,
    warning,
};

const char* to_string(EventKind k);

struct ArrivalInfo {
    UserId owner;
    BurstId burst = 0;
};

struct EnqueueInfo {
    int level = 0;
    BurstId burst = 0;
};

// One record per burst: the chosen site goes in SimEvent::site, the totals
// every candidate was quoted stay here for audit.
struct PlacementInfo {
    BurstId burst = 0;
    CostBreakdown cost;  // summed over the burst at the chosen site
    std::vector<std::pair<SiteId, double>> candidate_totals;
};

struct LevelChange {
    int from = 0;
    int to = 0;
};

enum class TransferLeg { inbound, outbound };

struct TransferInfo {
    TransferLeg leg = TransferLeg::inbound;
    double bytes = 0.0;
    double duration = 0.0;
};

struct ExecInfo {
    double service_time = 0.0;
    int processors = 1;
};

struct ExportInfo {
    SiteId from;
    SiteId to;
    double local_total = 0.0;
    double remote_total = 0.0;
};

struct WarningInfo {
    std::string message;
};

using EventPayload = std::variant<std::monostate, ArrivalInfo, EnqueueInfo, PlacementInfo,
                                  LevelChange, TransferInfo, ExecInfo, ExportInfo, WarningInfo>;

// Totally ordered by (time, seq); seq numbers follow processing order.
struct SimEvent {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::warning;
    std::optional<JobId> job;
    std::optional<SiteId> site;
    EventPayload payload;
};

struct EventLog {
    std::vector<SiteState> sites;  // states at simulation start, sorted by id
    double start_time = 0.0;
    double end_time = 0.0;
    std::vector<SimEvent> events;
};

// Shortest decimal string that round-trips the value.
std::string format_double(double v);

// Payload fields as "key=value" pairs joined with ';' (no spaces).
std::string event_detail(const SimEvent& ev);

void write_events_csv(const EventLog& log, std::ostream& os);
void write_events_json(const EventLog& log, const std::string& scenario_digest, std::ostream& os);

}  // namespace diana
