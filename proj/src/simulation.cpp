#include "diana/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <vector>

#include "diana/errors.hpp"
#include "diana/queues.hpp"
#include "diana/rng.hpp"
#include "diana/scheduler.hpp"

namespace diana {

double job_service_time(const Job& job, const SiteState& site) {
    if (!(site.capability > 0.0) || !std::isfinite(site.capability))
        raise(ErrorKind::invalid_site, "site " + site.id + ": capability must be finite and > 0");
    if (!(job.compute_demand > 0.0) || !std::isfinite(job.compute_demand))
        raise(ErrorKind::validation,
              "job " + std::to_string(job.id) + ": compute demand must be finite and > 0");
    return job.compute_demand / site.capability;
}

TransferPlan transfer_phase(const Job& job, const SiteId& placement, const Topology& topo) {
    TransferPlan plan;
    plan.inbound = transfer_time(job.data.input_bytes, job.data.input_source, placement, topo) +
                   transfer_time(job.data.executable_bytes, job.data.executable_source, placement,
                                 topo);
    plan.outbound = transfer_time(job.data.output_bytes, placement, job.data.output_sink, topo);
    return plan;
}

namespace {

enum class HeapKind { burst_arrival, transfer_done, exec_done, output_done, tick };

struct HeapEvent {
    double time = 0.0;
    std::uint64_t order = 0;  // FIFO among simultaneous events
    HeapKind kind = HeapKind::tick;
    std::size_t burst_index = 0;
    JobId job = 0;
};

struct HeapAfter {
    bool operator()(const HeapEvent& a, const HeapEvent& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.order > b.order;
    }
};

struct SiteRuntime {
    SiteState seed;
    FeedbackQueues queues;
    int busy = 0;  // processors held by staging or running jobs
};

struct ActiveJob {
    Job job;
    std::size_t site = 0;
    TransferPlan plan;
    double service = 0.0;
};

class Engine {
public:
    explicit Engine(const Scenario& sc) : sc_(sc) {}

    EventLog run() {
        check_scenario();
        init_sites();
        init_workload();
        for (const std::string& note : sc_.warnings)
            log(EventKind::warning, std::nullopt, std::nullopt, WarningInfo{note});
        schedule_tick();

        bool horizon_hit = false;
        while (!heap_.empty()) {
            HeapEvent ev = heap_.top();
            heap_.pop();
            if (ev.time > sc_.duration) {
                horizon_hit = true;
                break;
            }
            now_ = ev.time;
            switch (ev.kind) {
                case HeapKind::burst_arrival: handle_burst(ev.burst_index); break;
                case HeapKind::transfer_done: handle_transfer_done(ev.job); break;
                case HeapKind::exec_done: handle_exec_done(ev.job); break;
                case HeapKind::output_done: handle_output_done(ev.job); break;
                case HeapKind::tick: handle_tick(); break;
            }
            check_conservation();
        }
        log_.end_time = horizon_hit ? sc_.duration : now_;
        return std::move(log_);
    }

private:
    void check_scenario() {
        auto diags = validate(sc_);
        if (diags.empty()) return;
        std::string msg = "invalid scenario:";
        for (const Diagnostic& d : diags) msg += "\n  " + d.path + ": " + d.message;
        raise(ErrorKind::validation, msg);
    }

    void init_sites() {
        std::vector<SiteState> seeds = sc_.sites;
        std::sort(seeds.begin(), seeds.end(),
                  [](const SiteState& a, const SiteState& b) { return a.id < b.id; });
        sites_.reserve(seeds.size());
        for (SiteState& seed : seeds) {
            seed.queue_length = 0;  // live state starts empty regardless of advertised figures
            seed.load = 0.0;
            site_index_[seed.id] = sites_.size();
            sites_.push_back(SiteRuntime{seed, FeedbackQueues(sc_.policy), 0});
        }
        log_.sites = std::move(seeds);
        log_.start_time = 0.0;
    }

    void init_workload() {
        placement_rng_.seed(splitmix64(sc_.seed ^ 0x6a09e667f3bcc909ULL));
        std::vector<SiteId> ids;
        int max_processors = 1;
        for (const SiteRuntime& s : sites_) {
            ids.push_back(s.seed.id);
            max_processors = std::max(max_processors, s.seed.processors);
        }
        bursts_ = generate_workload(sc_.workload, ids, max_processors, sc_.seed);
        for (std::size_t i = 0; i < bursts_.size(); ++i) {
            if (bursts_[i].arrival_time > sc_.duration) continue;  // beyond the horizon
            push(bursts_[i].arrival_time, HeapKind::burst_arrival, i, 0);
            ++remaining_arrivals_;
        }
    }

    void push(double time, HeapKind kind, std::size_t burst_index, JobId job) {
        heap_.push(HeapEvent{time, heap_order_++, kind, burst_index, job});
    }

    void log(EventKind kind, std::optional<JobId> job, std::optional<SiteId> site,
             EventPayload payload) {
        log_.events.push_back(SimEvent{now_, seq_++, kind, std::move(job), std::move(site),
                                       std::move(payload)});
    }

    std::size_t in_system() const {
        std::size_t queued = 0;
        for (const SiteRuntime& s : sites_) queued += s.queues.total_queued();
        return queued + active_.size();
    }

    void check_conservation() const {
        std::size_t queued = 0;
        for (const SiteRuntime& s : sites_) queued += s.queues.total_queued();
        if (arrived_ != completed_ + queued + active_.size())
            raise(ErrorKind::simulation_corrupt,
                  "job conservation violated at t=" + format_double(now_) + ": " +
                      std::to_string(arrived_) + " arrived vs " + std::to_string(completed_) +
                      " done + " + std::to_string(queued) + " queued + " +
                      std::to_string(active_.size()) + " active");
    }

    SiteState site_state(std::size_t i) const {
        SiteState s = sites_[i].seed;
        s.queue_length = sites_[i].queues.total_queued();
        s.load = std::clamp(static_cast<double>(sites_[i].busy) / s.processors, 0.0, 1.0);
        return s;
    }

    GridView grid_view() const {
        GridView view;
        view.topology = &sc_.topology;
        view.weights = sc_.weights;
        view.sites.reserve(sites_.size());
        for (std::size_t i = 0; i < sites_.size(); ++i) view.sites.push_back(site_state(i));
        return view;
    }

    Placement place(const Burst& burst, const GridView& view) {
        if (sc_.scheduler_kind == SchedulerKind::diana) return select_site(burst.jobs, view);

        int widest = 1;
        for (const Job& job : burst.jobs) widest = std::max(widest, job.processors_required);
        std::vector<const SiteState*> runnable;
        for (const SiteState& s : view.sites)
            if (s.processors >= widest) runnable.push_back(&s);
        if (runnable.empty())
            raise(ErrorKind::unrunnable,
                  "no site has the " + std::to_string(widest) + " processors this burst needs");

        Placement placement;
        placement.burst = burst.id;
        const SiteState* chosen = nullptr;
        if (sc_.scheduler_kind == SchedulerKind::greedy_compute) {
            double best = 0.0;
            for (const SiteState* s : runnable) {
                double cost =
                    compute_cost(*s, view.weights) * static_cast<double>(burst.jobs.size());
                placement.per_candidate.emplace_back(s->id,
                                                     CostBreakdown{0.0, cost, 0.0, cost});
                if (!chosen || cost < best) {
                    chosen = s;
                    best = cost;
                }
            }
        } else {  // random: one draw per burst keeps the stream aligned across runs
            chosen = runnable[uniform_index(placement_rng_, runnable.size())];
            for (const SiteState* s : runnable) {
                CostBreakdown sum;
                for (const Job& job : burst.jobs) {
                    CostBreakdown one = total_cost(job.data, *s, *view.topology, view.weights);
                    sum.network += one.network;
                    sum.compute += one.compute;
                    sum.dtc += one.dtc;
                    sum.total += one.total;
                }
                placement.per_candidate.emplace_back(s->id, sum);
            }
        }
        placement.site = chosen->id;
        for (const auto& [id, cost] : placement.per_candidate)
            if (id == chosen->id) placement.cost = cost;
        return placement;
    }

    void handle_burst(std::size_t index) {
        const Burst& burst = bursts_[index];
        --remaining_arrivals_;
        arrived_ += burst.jobs.size();
        for (const Job& job : burst.jobs)
            log(EventKind::arrival, job.id, std::nullopt, ArrivalInfo{burst.owner, burst.id});

        GridView view = grid_view();
        Placement placement = place(burst, view);
        PlacementInfo info;
        info.burst = burst.id;
        info.cost = placement.cost;
        for (const auto& [id, cost] : placement.per_candidate)
            info.candidate_totals.emplace_back(id, cost.total);
        log(EventKind::placement, std::nullopt, placement.site, std::move(info));

        std::size_t target = site_index_.at(placement.site);
        BurstEnqueue enq = sites_[target].queues.enqueue_burst(burst.jobs, now_);
        for (JobId id : enq.order) {
            log(EventKind::enqueue, id, placement.site, EnqueueInfo{enq.level, burst.id});
            if (enq.level > sc_.policy.base_level)
                log(EventKind::demotion, id, placement.site,
                    LevelChange{sc_.policy.base_level, enq.level});
        }
        dispatch(target);
        schedule_tick();
    }

    void dispatch(std::size_t index) {
        SiteRuntime& site = sites_[index];
        while (const Job* head = site.queues.peek_next()) {
            if (head->processors_required > site.seed.processors - site.busy) break;
            Job job = *site.queues.next_job();
            TransferPlan plan;
            try {
                plan = transfer_phase(job, site.seed.id, sc_.topology);
            } catch (const Error& e) {
                // Unreachable with a validated full mesh, but a lost route must
                // not lose the job: put it back and let a later tick retry.
                log(EventKind::warning, job.id, site.seed.id,
                    WarningInfo{std::string("dispatch failed: ") + e.what()});
                site.queues.requeue(std::move(job), now_);
                break;
            }
            site.busy += job.processors_required;
            job.state = JobState::transferring;
            double service = job_service_time(job, site.seed);
            double staged_bytes = job.data.input_bytes + job.data.executable_bytes;
            JobId id = job.id;
            log(EventKind::transfer_start, id, site.seed.id,
                TransferInfo{TransferLeg::inbound, staged_bytes, plan.inbound});
            active_.emplace(id, ActiveJob{std::move(job), index, plan, service});
            push(now_ + plan.inbound, HeapKind::transfer_done, 0, id);
        }
    }

    ActiveJob& active(JobId id) {
        auto it = active_.find(id);
        if (it == active_.end())
            raise(ErrorKind::simulation_corrupt,
                  "job " + std::to_string(id) + " is not in flight at t=" + format_double(now_));
        return it->second;
    }

    void handle_transfer_done(JobId id) {
        ActiveJob& a = active(id);
        SiteRuntime& site = sites_[a.site];
        log(EventKind::transfer_end, id, site.seed.id,
            TransferInfo{TransferLeg::inbound, a.job.data.input_bytes + a.job.data.executable_bytes,
                         a.plan.inbound});
        if (site.busy > site.seed.processors)
            raise(ErrorKind::simulation_corrupt, "capacity exceeded at site " + site.seed.id +
                                                     ": " + std::to_string(site.busy) + " of " +
                                                     std::to_string(site.seed.processors) +
                                                     " processors in use");
        a.job.state = JobState::running;
        log(EventKind::exec_start, id, site.seed.id,
            ExecInfo{a.service, a.job.processors_required});
        push(now_ + a.service, HeapKind::exec_done, 0, id);
    }

    void handle_exec_done(JobId id) {
        ActiveJob& a = active(id);
        SiteRuntime& site = sites_[a.site];
        log(EventKind::exec_end, id, site.seed.id, ExecInfo{a.service, a.job.processors_required});
        site.busy -= a.job.processors_required;
        log(EventKind::transfer_start, id, site.seed.id,
            TransferInfo{TransferLeg::outbound, a.job.data.output_bytes, a.plan.outbound});
        push(now_ + a.plan.outbound, HeapKind::output_done, 0, id);
        dispatch(a.site);
    }

    void handle_output_done(JobId id) {
        ActiveJob& a = active(id);
        SiteRuntime& site = sites_[a.site];
        log(EventKind::transfer_end, id, site.seed.id,
            TransferInfo{TransferLeg::outbound, a.job.data.output_bytes, a.plan.outbound});
        a.job.state = JobState::done;
        ++completed_;
        active_.erase(id);
    }

    void handle_tick() {
        tick_scheduled_ = false;
        for (SiteRuntime& site : sites_) {
            for (const Promotion& p : site.queues.apply_aging(now_))
                log(EventKind::promotion, p.job, site.seed.id, LevelChange{p.from, p.to});
        }
        if (sc_.scheduler_kind == SchedulerKind::diana) migrate();
        for (std::size_t i = 0; i < sites_.size(); ++i) dispatch(i);
        schedule_tick();
    }

    void migrate() {
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            SiteRuntime& src = sites_[i];
            if (src.queues.total_queued() == 0) continue;
            LittleEstimate est = estimate_arrivals(log_, src.seed.id, sc_.estimate_window, now_);
            SiteState snap = site_state(i);
            if (!should_export(snap, est, sc_.export_policy)) continue;

            std::vector<Job> candidates;
            for (JobId id : src.queues.export_order()) {
                const Job* job = src.queues.find(id);
                if (job && job->remigratable) candidates.push_back(*job);
            }
            if (candidates.empty()) continue;
            GridView view = grid_view();
            auto assignments = export_jobs(candidates, src.seed.id, view);
            for (const ExportAssignment& a : assignments) {
                snap.queue_length = src.queues.total_queued();
                if (!should_export(snap, est, sc_.export_policy)) break;  // pressure relieved
                Job job = src.queues.take(a.job);
                job.remigratable = false;  // one hop only, ever
                BurstId burst = job.burst;
                log(EventKind::export_job, a.job, src.seed.id,
                    ExportInfo{src.seed.id, a.to, a.local_total, a.remote_total});
                std::size_t dst = site_index_.at(a.to);
                int level = sites_[dst].queues.enqueue_migrated(std::move(job), now_);
                log(EventKind::enqueue, a.job, a.to, EnqueueInfo{level, burst});
                dispatch(dst);
            }
        }
    }

    // Housekeeping runs on an absolute grid of aging_tick so tick times never
    // depend on what happened in between; ticks pause while the grid is idle.
    void schedule_tick() {
        if (tick_scheduled_) return;
        if (remaining_arrivals_ == 0 && in_system() == 0) return;
        double next = (std::floor(now_ / sc_.aging_tick) + 1.0) * sc_.aging_tick;
        if (next > sc_.duration) return;
        push(next, HeapKind::tick, 0, 0);
        tick_scheduled_ = true;
    }

    const Scenario& sc_;
    std::vector<SiteRuntime> sites_;
    std::map<SiteId, std::size_t> site_index_;
    std::priority_queue<HeapEvent, std::vector<HeapEvent>, HeapAfter> heap_;
    std::uint64_t heap_order_ = 0;
    std::uint64_t seq_ = 0;
    double now_ = 0.0;
    std::vector<Burst> bursts_;
    std::map<JobId, ActiveJob> active_;
    std::mt19937_64 placement_rng_;
    EventLog log_;
    std::size_t arrived_ = 0;
    std::size_t completed_ = 0;
    std::size_t remaining_arrivals_ = 0;
    bool tick_scheduled_ = false;
};

}  // namespace

EventLog run(const Scenario& scenario) { return Engine(scenario).run(); }

}  // namespace diana
