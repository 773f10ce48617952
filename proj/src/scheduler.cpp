#include "diana/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "diana/errors.hpp"

namespace diana {

double littles_n(double arrival_rate, double avg_wait) {
    if (!std::isfinite(arrival_rate) || arrival_rate < 0.0)
        raise(ErrorKind::undefined_estimate, "arrival rate must be finite and >= 0");
    if (!std::isfinite(avg_wait) || avg_wait < 0.0)
        raise(ErrorKind::undefined_estimate, "average wait must be finite and >= 0");
    return arrival_rate * avg_wait;
}

double littles_r(double queue_length, double avg_wait) {
    if (avg_wait <= 0.0)
        raise(ErrorKind::undefined_estimate, "cannot solve N = R*W for R without a positive W");
    return queue_length / avg_wait;
}

double littles_w(double queue_length, double arrival_rate) {
    if (arrival_rate <= 0.0)
        raise(ErrorKind::undefined_estimate, "cannot solve N = R*W for W without a positive R");
    return queue_length / arrival_rate;
}

Placement select_site(const std::vector<Job>& burst, const GridView& view) {
    if (burst.empty()) raise(ErrorKind::validation, "cannot place an empty burst");
    if (!view.topology) raise(ErrorKind::validation, "grid view has no topology");
    int widest = 1;
    for (const Job& job : burst) widest = std::max(widest, job.processors_required);

    std::vector<const SiteState*> sites;
    sites.reserve(view.sites.size());
    for (const SiteState& s : view.sites) sites.push_back(&s);
    std::sort(sites.begin(), sites.end(),
              [](const SiteState* a, const SiteState* b) { return a->id < b->id; });

    Placement placement;
    placement.burst = burst.front().burst;
    const SiteState* best = nullptr;
    CostBreakdown best_cost;
    for (const SiteState* site : sites) {
        if (site->processors < widest) continue;
        CostBreakdown sum;
        for (const Job& job : burst) {
            CostBreakdown one = total_cost(job.data, *site, *view.topology, view.weights);
            sum.network += one.network;
            sum.compute += one.compute;
            sum.dtc += one.dtc;
            sum.total += one.total;
        }
        placement.per_candidate.emplace_back(site->id, sum);
        if (!best || sum.total < best_cost.total) {  // strict: ties keep the lower id
            best = site;
            best_cost = sum;
        }
    }
    if (!best)
        raise(ErrorKind::unrunnable,
              "no site has the " + std::to_string(widest) + " processors this burst needs");
    placement.site = best->id;
    placement.cost = best_cost;
    return placement;
}

bool should_export(const SiteState& site, const LittleEstimate& est, const ExportPolicy& policy) {
    if (est.arrival_rate > est.service_capacity) return true;
    double threshold = policy.overload_threshold
                           ? *policy.overload_threshold
                           : static_cast<double>(site.processors) * policy.overload_factor;
    return static_cast<double>(site.queue_length) > threshold;
}

std::vector<ExportAssignment> export_jobs(std::vector<Job>& jobs, const SiteId& from,
                                          const GridView& view) {
    if (!view.topology) raise(ErrorKind::validation, "grid view has no topology");
    const SiteState* local = nullptr;
    std::vector<const SiteState*> sites;
    sites.reserve(view.sites.size());
    for (const SiteState& s : view.sites) {
        if (s.id == from) local = &s;
        sites.push_back(&s);
    }
    if (!local) raise(ErrorKind::invalid_site, "exporting site " + from + " is not in the view");
    std::sort(sites.begin(), sites.end(),
              [](const SiteState* a, const SiteState* b) { return a->id < b->id; });

    std::vector<ExportAssignment> assignments;
    for (Job& job : jobs) {
        if (!job.remigratable) continue;
        if (local->processors < job.processors_required) continue;  // quoted for completeness
        double local_total = total_cost(job.data, *local, *view.topology, view.weights).total;
        const SiteState* best = nullptr;
        double best_total = std::numeric_limits<double>::infinity();
        for (const SiteState* site : sites) {
            if (site->id == from || site->processors < job.processors_required) continue;
            double total = total_cost(job.data, *site, *view.topology, view.weights).total;
            if (total < best_total) {
                best_total = total;
                best = site;
            }
        }
        // Move only on a strict win; equal cost stays put.
        if (best && best_total < local_total) {
            job.remigratable = false;
            assignments.push_back(ExportAssignment{job.id, best->id, local_total, best_total});
        }
    }
    return assignments;
}

LittleEstimate estimate_arrivals(const EventLog& log, const SiteId& site, double window) {
    double now = log.end_time;
    if (!log.events.empty()) now = std::max(now, log.events.back().time);
    return estimate_arrivals(log, site, window, now);
}

LittleEstimate estimate_arrivals(const EventLog& log, const SiteId& site, double window,
                                 double now) {
    if (!(window > 0.0) || !std::isfinite(window))
        raise(ErrorKind::undefined_estimate, "estimate window must be finite and > 0");
    int processors = 0;
    bool known = false;
    for (const SiteState& s : log.sites) {
        if (s.id == site) {
            processors = s.processors;
            known = true;
            break;
        }
    }
    if (!known) raise(ErrorKind::invalid_site, "site " + site + " is not in the log");

    const double from = now - window;
    std::size_t arrivals = 0;
    double wait_sum = 0.0;
    std::size_t wait_count = 0;
    double service_sum_window = 0.0, service_sum_all = 0.0;
    std::size_t service_window = 0, service_all = 0;
    std::map<JobId, double> enqueued_at;  // latest enqueue at this site
    std::map<JobId, double> exec_began;

    for (const SimEvent& ev : log.events) {
        if (ev.time > now) break;
        if (!ev.site || *ev.site != site || !ev.job) continue;
        switch (ev.kind) {
            case EventKind::enqueue:
                enqueued_at[*ev.job] = ev.time;
                if (ev.time >= from) ++arrivals;
                break;
            case EventKind::transfer_start: {
                const auto* info = std::get_if<TransferInfo>(&ev.payload);
                if (info && info->leg == TransferLeg::inbound && ev.time >= from) {
                    auto it = enqueued_at.find(*ev.job);
                    if (it != enqueued_at.end()) {
                        wait_sum += ev.time - it->second;
                        ++wait_count;
                    }
                }
                break;
            }
            case EventKind::exec_start:
                exec_began[*ev.job] = ev.time;
                break;
            case EventKind::exec_end: {
                auto it = exec_began.find(*ev.job);
                if (it != exec_began.end()) {
                    double service = ev.time - it->second;
                    service_sum_all += service;
                    ++service_all;
                    if (ev.time >= from) {
                        service_sum_window += service;
                        ++service_window;
                    }
                }
                break;
            }
            case EventKind::export_job:
                enqueued_at.erase(*ev.job);  // left this queue unserved
                break;
            default:
                break;
        }
    }

    LittleEstimate est;
    est.arrival_rate = static_cast<double>(arrivals) / window;
    est.avg_wait = wait_count ? wait_sum / static_cast<double>(wait_count) : 0.0;
    est.predicted_queue = littles_n(est.arrival_rate, est.avg_wait);
    if (service_window > 0 && service_sum_window > 0.0)
        est.service_capacity =
            static_cast<double>(processors) / (service_sum_window / static_cast<double>(service_window));
    else if (service_all > 0 && service_sum_all > 0.0)
        est.service_capacity =
            static_cast<double>(processors) / (service_sum_all / static_cast<double>(service_all));
    else
        est.service_capacity = std::numeric_limits<double>::infinity();
    return est;
}

}  // namespace diana
