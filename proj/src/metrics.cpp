#include "diana/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "diana/errors.hpp"

namespace diana {

namespace {

struct Trace {
    double arrival = -1.0;
    double first_enqueue = -1.0;
    double exec_start = -1.0;
    double exec_end = -1.0;
    double completion = -1.0;
    double inbound_duration = 0.0;
    double service = 0.0;
    int processors = 1;
    SiteId exec_site;
    bool queued = false;  // currently sitting in some queue
    bool inbound_started = false;
    bool inbound_done = false;
    bool outbound_started = false;
    int exports = 0;
};

[[noreturn]] void bad_event(const SimEvent& ev, const std::string& reason) {
    std::string what = "event seq=" + std::to_string(ev.seq) + " t=" + format_double(ev.time) +
                       " kind=" + to_string(ev.kind);
    if (ev.job) what += " job=" + std::to_string(*ev.job);
    raise(ErrorKind::log_integrity, what + ": " + reason);
}

std::map<JobId, Trace> replay(const EventLog& log) {
    std::map<JobId, Trace> traces;
    double prev_time = -std::numeric_limits<double>::infinity();
    std::uint64_t prev_seq = 0;
    bool first = true;
    for (const SimEvent& ev : log.events) {
        if (!first) {
            if (ev.time < prev_time) bad_event(ev, "time runs backwards");
            if (ev.seq <= prev_seq) bad_event(ev, "sequence number does not increase");
        }
        prev_time = ev.time;
        prev_seq = ev.seq;
        first = false;
        if (!ev.job) continue;  // placement and run-level warnings
        Trace& t = traces[*ev.job];
        switch (ev.kind) {
            case EventKind::arrival:
                if (t.arrival >= 0.0) bad_event(ev, "second arrival for this job");
                t.arrival = ev.time;
                break;
            case EventKind::enqueue:
                if (t.arrival < 0.0) bad_event(ev, "enqueue before arrival");
                if (t.queued) bad_event(ev, "job is already queued");
                if (t.inbound_started) bad_event(ev, "enqueue after dispatch");
                if (t.first_enqueue < 0.0) t.first_enqueue = ev.time;
                t.queued = true;
                break;
            case EventKind::promotion:
            case EventKind::demotion:
                if (!t.queued) bad_event(ev, "level change for a job that is not queued");
                break;
            case EventKind::export_job:
                if (!t.queued) bad_event(ev, "export of a job that is not queued");
                t.queued = false;
                t.exports += 1;
                break;
            case EventKind::transfer_start: {
                const auto* info = std::get_if<TransferInfo>(&ev.payload);
                if (!info) bad_event(ev, "transfer without transfer payload");
                if (info->leg == TransferLeg::inbound) {
                    if (!t.queued) bad_event(ev, "dispatch of a job that is not queued");
                    if (t.inbound_started) bad_event(ev, "second inbound transfer");
                    t.queued = false;
                    t.inbound_started = true;
                    t.inbound_duration = info->duration;
                } else {
                    if (t.exec_end < 0.0) bad_event(ev, "output transfer before execution ended");
                    if (t.outbound_started) bad_event(ev, "second outbound transfer");
                    t.outbound_started = true;
                }
                break;
            }
            case EventKind::transfer_end: {
                const auto* info = std::get_if<TransferInfo>(&ev.payload);
                if (!info) bad_event(ev, "transfer without transfer payload");
                if (info->leg == TransferLeg::inbound) {
                    if (!t.inbound_started || t.inbound_done)
                        bad_event(ev, "inbound transfer end without matching start");
                    t.inbound_done = true;
                } else {
                    if (!t.outbound_started || t.completion >= 0.0)
                        bad_event(ev, "outbound transfer end without matching start");
                    t.completion = ev.time;
                }
                break;
            }
            case EventKind::exec_start: {
                if (!t.inbound_done) bad_event(ev, "execution before staging finished");
                if (t.exec_start >= 0.0) bad_event(ev, "second execution start");
                t.exec_start = ev.time;
                if (const auto* info = std::get_if<ExecInfo>(&ev.payload)) {
                    t.service = info->service_time;
                    t.processors = info->processors;
                }
                if (ev.site) t.exec_site = *ev.site;
                break;
            }
            case EventKind::exec_end:
                if (t.exec_start < 0.0) bad_event(ev, "execution end without start");
                if (!(ev.time > t.exec_start)) bad_event(ev, "execution must take positive time");
                if (t.exec_end >= 0.0) bad_event(ev, "second execution end");
                t.exec_end = ev.time;
                break;
            case EventKind::placement:
            case EventKind::warning:
                break;
        }
    }
    return traces;
}

double percentile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(sorted.size())));
    if (rank == 0) rank = 1;
    if (rank > sorted.size()) rank = sorted.size();
    return sorted[rank - 1];
}

}  // namespace

MetricsSummary compute_metrics(const EventLog& log) {
    auto traces = replay(log);
    MetricsSummary m;

    double first_arrival = std::numeric_limits<double>::infinity();
    double last_completion = -std::numeric_limits<double>::infinity();
    for (const auto& [id, t] : traces) {
        if (t.arrival >= 0.0) {
            ++m.submitted;
            first_arrival = std::min(first_arrival, t.arrival);
        }
        if (t.completion >= 0.0) last_completion = std::max(last_completion, t.completion);
        if (t.exports > 0) ++m.jobs_migrated;
    }

    std::vector<double> turnarounds;
    double wait_sum = 0.0, response_sum = 0.0;
    for (const auto& [id, t] : traces) {
        if (t.completion < 0.0) continue;
        ++m.completed;
        if (t.exports == 0) ++m.jobs_local;
        turnarounds.push_back(t.completion - t.arrival);
        wait_sum += (t.exec_start - t.first_enqueue) - t.inbound_duration;
        response_sum += t.exec_start - t.arrival;
    }

    if (m.completed > 0) {
        m.makespan = last_completion - first_arrival;
        m.throughput = m.makespan > 0.0 ? static_cast<double>(m.completed) / m.makespan : 0.0;
        double turnaround_sum = 0.0;
        for (double v : turnarounds) turnaround_sum += v;
        m.mean_turnaround = turnaround_sum / static_cast<double>(m.completed);
        m.mean_waiting = wait_sum / static_cast<double>(m.completed);
        m.mean_response = response_sum / static_cast<double>(m.completed);
        std::sort(turnarounds.begin(), turnarounds.end());
        std::size_t n = turnarounds.size();
        m.median_turnaround = n % 2 == 1 ? turnarounds[n / 2]
                                         : 0.5 * (turnarounds[n / 2 - 1] + turnarounds[n / 2]);
        m.p95_turnaround = percentile_sorted(turnarounds, 0.95);
    }

    for (const SiteState& site : log.sites) m.cpu_utilization[site.id] = 0.0;
    if (m.completed > 0 && m.makespan > 0.0) {
        std::map<SiteId, double> busy;
        for (const auto& [id, t] : traces) {
            if (t.exec_start < 0.0 || t.exec_site.empty()) continue;
            double end = t.exec_end >= 0.0 ? t.exec_end : last_completion;
            double lo = std::max(t.exec_start, first_arrival);
            double hi = std::min(end, last_completion);
            if (hi > lo) busy[t.exec_site] += (hi - lo) * t.processors;
        }
        for (const SiteState& site : log.sites) {
            auto it = busy.find(site.id);
            if (it == busy.end()) continue;
            m.cpu_utilization[site.id] =
                it->second / (static_cast<double>(site.processors) * m.makespan);
        }
    }

    double span = log.end_time - log.start_time;
    m.littles_residual = span > 0.0 ? littles_residual(log, span) : 0.0;
    return m;
}

double littles_residual(const EventLog& log, double window) {
    if (!(window > 0.0) || !std::isfinite(window))
        raise(ErrorKind::undefined_estimate, "residual window must be finite and > 0");
    if (log.events.empty()) return 0.0;
    double hi = std::max(log.end_time, log.events.back().time);
    double lo = std::max(log.start_time, hi - window);
    double span = hi - lo;
    if (!(span > 0.0)) return 0.0;

    std::map<JobId, double> open;  // job -> time it entered its current queue
    double queued_area = 0.0;
    std::size_t arrivals = 0;
    double wait_sum = 0.0;
    std::size_t exits = 0;

    auto close = [&](JobId id, double at, bool count_exit) {
        auto it = open.find(id);
        if (it == open.end()) return;
        double a = std::max(it->second, lo);
        double b = std::min(at, hi);
        if (b > a) queued_area += b - a;
        if (count_exit && at >= lo && at <= hi) {
            wait_sum += at - it->second;
            ++exits;
        }
        open.erase(it);
    };

    for (const SimEvent& ev : log.events) {
        if (ev.time > hi) break;
        if (!ev.job) continue;
        switch (ev.kind) {
            case EventKind::enqueue:
                open[*ev.job] = ev.time;
                if (ev.time >= lo) ++arrivals;
                break;
            case EventKind::export_job:
                close(*ev.job, ev.time, true);
                break;
            case EventKind::transfer_start: {
                const auto* info = std::get_if<TransferInfo>(&ev.payload);
                if (info && info->leg == TransferLeg::inbound) close(*ev.job, ev.time, true);
                break;
            }
            default:
                break;
        }
    }
    for (const auto& [id, since] : open) {
        double a = std::max(since, lo);
        if (hi > a) queued_area += hi - a;
    }

    double n_avg = queued_area / span;
    double r_avg = static_cast<double>(arrivals) / span;
    double w_avg = exits > 0 ? wait_sum / static_cast<double>(exits) : 0.0;
    return std::abs(n_avg - r_avg * w_avg) / std::max(n_avg, 1e-9);
}

SeriesTable series(const EventLog& log, SeriesKind kind, double bucket) {
    SeriesTable table;
    if (kind == SeriesKind::exec_time_vs_job_count) {
        MetricsSummary m = compute_metrics(log);
        table.columns = {"jobs", "mean_turnaround", "makespan"};
        table.rows.push_back(
            {static_cast<double>(m.submitted), m.mean_turnaround, m.makespan});
        return table;
    }

    if (!(bucket > 0.0) || !std::isfinite(bucket))
        raise(ErrorKind::validation, "series bucket must be finite and > 0");
    table.columns = {"time", "local", "migrated"};
    auto traces = replay(log);
    // (completion time, was exported) sorted by time
    std::vector<std::pair<double, bool>> done;
    for (const auto& [id, t] : traces)
        if (t.completion >= 0.0) done.emplace_back(t.completion, t.exports > 0);
    std::sort(done.begin(), done.end());

    double start = log.start_time;
    double end = std::max(log.end_time, start);
    std::size_t buckets = static_cast<std::size_t>(std::ceil((end - start) / bucket));
    if (buckets == 0) buckets = 1;
    std::size_t idx = 0, local = 0, migrated = 0;
    for (std::size_t k = 1; k <= buckets; ++k) {
        double edge = std::min(start + static_cast<double>(k) * bucket, end);
        while (idx < done.size() && done[idx].first <= edge) {
            if (done[idx].second)
                ++migrated;
            else
                ++local;
            ++idx;
        }
        table.rows.push_back({edge, static_cast<double>(local), static_cast<double>(migrated)});
    }
    return table;
}

SeriesTable exec_time_table(const std::vector<std::pair<std::string, MetricsSummary>>& runs) {
    SeriesTable table;
    table.columns = {"jobs"};
    std::vector<std::string> labels;
    for (const auto& [label, summary] : runs)
        if (std::find(labels.begin(), labels.end(), label) == labels.end())
            labels.push_back(label);
    for (const std::string& label : labels) {
        table.columns.push_back("mean_turnaround_" + label);
        table.columns.push_back("makespan_" + label);
    }

    std::vector<std::size_t> counts;
    for (const auto& [label, summary] : runs) counts.push_back(summary.submitted);
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t count : counts) {
        std::vector<double> row(table.columns.size(), nan);
        row[0] = static_cast<double>(count);
        for (const auto& [label, summary] : runs) {
            if (summary.submitted != count) continue;
            std::size_t li = static_cast<std::size_t>(
                std::find(labels.begin(), labels.end(), label) - labels.begin());
            row[1 + 2 * li] = summary.mean_turnaround;
            row[2 + 2 * li] = summary.makespan;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_series_csv(const SeriesTable& table, std::ostream& os) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ',';
        os << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_double(row[i]);
        }
        os << '\n';
    }
}

}  // namespace diana
