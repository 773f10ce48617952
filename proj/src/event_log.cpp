#include "diana/event_log.hpp"

#include <charconv>
#include <json.hpp>
#include <ostream>

namespace diana {

const char* to_string(JobState s) {
    switch (s) {
        case JobState::pending: return "pending";
        case JobState::queued: return "queued";
        case JobState::transferring: return "transferring";
        case JobState::running: return "running";
        case JobState::done: return "done";
    }
    return "?";
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::arrival: return "arrival";
        case EventKind::enqueue: return "enqueue";
        case EventKind::placement: return "placement";
        case EventKind::transfer_start: return "transfer_start";
        case EventKind::transfer_end: return "transfer_end";
        case EventKind::exec_start: return "exec_start";
        case EventKind::exec_end: return "exec_end";
        case EventKind::promotion: return "promotion";
        case EventKind::demotion: return "demotion";
        case EventKind::export_job: return "export";
        case EventKind::warning: return "warning";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

const char* to_string(TransferLeg leg) {
    return leg == TransferLeg::inbound ? "inbound" : "outbound";
}

struct DetailWriter {
    std::string out;

    void field(const char* key, const std::string& value) {
        if (!out.empty()) out += ';';
        out += key;
        out += '=';
        out += value;
    }
    void field(const char* key, double value) { field(key, format_double(value)); }
    void field(const char* key, std::uint64_t value) { field(key, std::to_string(value)); }
    void field(const char* key, int value) { field(key, std::to_string(value)); }

    void operator()(const std::monostate&) {}
    void operator()(const ArrivalInfo& p) {
        field("owner", p.owner);
        field("burst", p.burst);
    }
    void operator()(const EnqueueInfo& p) {
        field("level", p.level);
        field("burst", p.burst);
    }
    void operator()(const PlacementInfo& p) {
        field("burst", p.burst);
        field("network", p.cost.network);
        field("compute", p.cost.compute);
        field("dtc", p.cost.dtc);
        field("total", p.cost.total);
        std::string candidates;
        for (const auto& [site, total] : p.candidate_totals) {
            if (!candidates.empty()) candidates += '|';
            candidates += site + ':' + format_double(total);
        }
        field("candidates", candidates);
    }
    void operator()(const LevelChange& p) {
        field("from", p.from);
        field("to", p.to);
    }
    void operator()(const TransferInfo& p) {
        field("leg", std::string(to_string(p.leg)));
        field("bytes", p.bytes);
        field("duration", p.duration);
    }
    void operator()(const ExecInfo& p) {
        field("service", p.service_time);
        field("processors", p.processors);
    }
    void operator()(const ExportInfo& p) {
        field("from", p.from);
        field("to", p.to);
        field("local_total", p.local_total);
        field("remote_total", p.remote_total);
    }
    void operator()(const WarningInfo& p) { field("message", p.message); }
};

nlohmann::json payload_json(const SimEvent& ev) {
    nlohmann::json j = nlohmann::json::object();
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ArrivalInfo>) {
                j["owner"] = p.owner;
                j["burst"] = p.burst;
            } else if constexpr (std::is_same_v<T, EnqueueInfo>) {
                j["level"] = p.level;
                j["burst"] = p.burst;
            } else if constexpr (std::is_same_v<T, PlacementInfo>) {
                j["burst"] = p.burst;
                j["network"] = p.cost.network;
                j["compute"] = p.cost.compute;
                j["dtc"] = p.cost.dtc;
                j["total"] = p.cost.total;
                nlohmann::json c = nlohmann::json::object();
                for (const auto& [site, total] : p.candidate_totals) c[site] = total;
                j["candidates"] = std::move(c);
            } else if constexpr (std::is_same_v<T, LevelChange>) {
                j["from"] = p.from;
                j["to"] = p.to;
            } else if constexpr (std::is_same_v<T, TransferInfo>) {
                j["leg"] = to_string(p.leg);
                j["bytes"] = p.bytes;
                j["duration"] = p.duration;
            } else if constexpr (std::is_same_v<T, ExecInfo>) {
                j["service"] = p.service_time;
                j["processors"] = p.processors;
            } else if constexpr (std::is_same_v<T, ExportInfo>) {
                j["from"] = p.from;
                j["to"] = p.to;
                j["local_total"] = p.local_total;
                j["remote_total"] = p.remote_total;
            } else if constexpr (std::is_same_v<T, WarningInfo>) {
                j["message"] = p.message;
            }
        },
        ev.payload);
    return j;
}

}  // namespace

std::string event_detail(const SimEvent& ev) {
    DetailWriter w;
    std::visit(w, ev.payload);
    return w.out;
}

void write_events_csv(const EventLog& log, std::ostream& os) {
    os << "time,seq,kind,job,site,detail\n";
    for (const SimEvent& ev : log.events) {
        os << format_double(ev.time) << ',' << ev.seq << ',' << to_string(ev.kind) << ',';
        if (ev.job) os << *ev.job;
        os << ',';
        if (ev.site) os << *ev.site;
        // details never contain commas or quotes: values are numbers, ids, and
        // ';'/'|'-joined pairs
        os << ',' << event_detail(ev) << '\n';
    }
}

void write_events_json(const EventLog& log, const std::string& scenario_digest,
                       std::ostream& os) {
    nlohmann::json root;
    root["scenario_digest"] = scenario_digest;
    root["start_time"] = log.start_time;
    root["end_time"] = log.end_time;
    nlohmann::json events = nlohmann::json::array();
    for (const SimEvent& ev : log.events) {
        nlohmann::json j;
        j["time"] = ev.time;
        j["seq"] = ev.seq;
        j["kind"] = to_string(ev.kind);
        if (ev.job) j["job"] = *ev.job;
        if (ev.site) j["site"] = *ev.site;
        nlohmann::json payload = payload_json(ev);
        for (auto& [key, value] : payload.items()) j[key] = std::move(value);
        events.push_back(std::move(j));
    }
    root["events"] = std::move(events);
    os << root.dump(2) << '\n';
}

}  // namespace diana
