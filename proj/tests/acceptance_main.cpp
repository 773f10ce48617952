// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. The binary exits non-zero if any
// criterion fails, so it slots directly into ctest.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diana/cli.hpp"
#include "diana/cost_model.hpp"
#include "diana/errors.hpp"
#include "diana/event_log.hpp"
#include "diana/metrics.hpp"
#include "diana/rng.hpp"
#include "diana/scenario.hpp"
#include "diana/scheduler.hpp"
#include "diana/simulation.hpp"
#include "diana/types.hpp"
#include "diana/workload.hpp"

#include "support.hpp"

namespace {

using namespace diana;

// A criterion aborts by throwing; anything else it returns becomes the
// detail text of its PASS line.
struct CheckFailure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure{what};
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

std::string fmt2(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

SiteState make_site(const std::string& id, double capability, int processors) {
    SiteState s;
    s.id = id;
    s.capability = capability;
    s.processors = processors;
    return s;
}

NetworkLink make_link(const std::string& src, const std::string& dst, double bandwidth,
                      double loss, double rtt, double mss = 1460.0) {
    NetworkLink l;
    l.src = src;
    l.dst = dst;
    l.bandwidth = bandwidth;
    l.loss_prob = loss;
    l.rtt = rtt;
    l.mss = mss;
    return l;
}

void full_mesh(Scenario& sc, double bandwidth, double loss, double rtt) {
    for (const auto& a : sc.sites)
        for (const auto& b : sc.sites)
            if (a.id != b.id) sc.topology.add(make_link(a.id, b.id, bandwidth, loss, rtt));
}

// ---------------------------------------------------------------------------
// Criterion 9 bookkeeping: every event log produced by the other criteria is
// audited for repeat exports of the same job.

std::size_t g_logs_scanned = 0;
std::size_t g_rehop_violations = 0;

void audit_one_hop(const EventLog& log) {
    ++g_logs_scanned;
    std::map<JobId, int> exports;
    for (const auto& ev : log.events)
        if (ev.kind == EventKind::export_job && ev.job) ++exports[*ev.job];
    for (const auto& [job, count] : exports)
        if (count > 1) ++g_rehop_violations;
}

EventLog run_and_audit(const Scenario& sc) {
    EventLog log = run(sc);
    audit_one_hop(log);
    return log;
}

std::size_t count_kind(const EventLog& log, EventKind kind) {
    std::size_t n = 0;
    for (const auto& ev : log.events)
        if (ev.kind == kind) ++n;
    return n;
}

std::size_t count_completions(const EventLog& log) {
    std::size_t n = 0;
    for (const auto& ev : log.events) {
        if (ev.kind != EventKind::transfer_end) continue;
        if (std::get<TransferInfo>(ev.payload).leg == TransferLeg::outbound) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Criterion 1: randomized placements against an exhaustive oracle.

std::string criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(splitmix64(0x1d1a7a01ULL));
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const int n_sites = 2 + static_cast<int>(uniform_index(rng, 4));
        GridView view;
        std::vector<SiteId> ids;
        for (int i = 0; i < n_sites; ++i) {
            SiteState s;
            s.id = "S" + std::to_string(i);
            s.capability = uniform_real(rng, 0.5, 20.0);
            // S0 always has room for the widest job the generator can draw.
            s.processors = i == 0 ? 8 : 1 + static_cast<int>(uniform_index(rng, 8));
            s.queue_length = static_cast<std::size_t>(uniform_index(rng, 40));
            s.load = uniform_real(rng, 0.0, 1.0);
            ids.push_back(s.id);
            view.sites.push_back(std::move(s));
        }
        Topology topo;
        for (int i = 0; i < n_sites; ++i)
            for (int j = 0; j < n_sites; ++j)
                if (i != j)
                    topo.add(make_link(ids[i], ids[j], std::pow(10.0, uniform_real(rng, 6.0, 9.0)),
                                       uniform_real(rng, 1e-6, 0.3),
                                       uniform_real(rng, 0.01, 0.5)));
        view.topology = &topo;
        CostWeights w;
        w.w5 = uniform_real(rng, 0.0, 2.0);
        w.w6 = uniform_real(rng, 0.0, 2.0);
        w.w7 = uniform_real(rng, 0.0, 2.0);
        w.alpha = uniform_real(rng, 0.0, 2.0);
        w.beta = uniform_real(rng, 0.0, 2.0);
        w.gamma = uniform_real(rng, 0.0, 2.0);
        if (w.alpha + w.beta + w.gamma < 0.1) w.alpha = 1.0;
        view.weights = w;

        const int n_jobs = 1 + static_cast<int>(uniform_index(rng, 4));
        std::vector<Job> burst;
        int widest = 1;
        for (int j = 0; j < n_jobs; ++j) {
            Job job;
            job.id = static_cast<JobId>(j + 1);
            job.owner = "u1";
            job.burst = 1;
            job.processors_required = 1 + static_cast<int>(uniform_index(rng, 8));
            job.compute_demand = uniform_real(rng, 0.1, 30.0);
            job.data.input_bytes = uniform_real(rng, 0.0, 1e8);
            job.data.output_bytes = uniform_real(rng, 0.0, 1e8);
            job.data.executable_bytes = uniform_real(rng, 0.0, 1e7);
            job.data.input_source = ids[uniform_index(rng, ids.size())];
            job.data.output_sink = ids[uniform_index(rng, ids.size())];
            job.data.executable_source = ids[uniform_index(rng, ids.size())];
            widest = std::max(widest, job.processors_required);
            burst.push_back(std::move(job));
        }

        // Exhaustive oracle: cheapest summed total over every runnable site,
        // lowest id on a tie. view.sites is already in ascending id order.
        const SiteState* best = nullptr;
        double best_total = 0.0;
        for (const auto& s : view.sites) {
            if (s.processors < widest) continue;
            double total = 0.0;
            for (const auto& job : burst) total += total_cost(job.data, s, topo, w).total;
            if (best == nullptr || total < best_total) {
                best = &s;
                best_total = total;
            }
        }
        expect(best != nullptr, "generator invariant broken: no runnable site");

        Placement p = select_site(burst, view);
        expect(p.site == best->id, "trial " + std::to_string(trial) + ": scheduler chose " +
                                       p.site + ", oracle chose " + best->id);
        expect(p.cost.total == best_total,
               "trial " + std::to_string(trial) + ": totals diverge, scheduler " +
                   fmt(p.cost.total) + " vs oracle " + fmt(best_total));
    }
    const double dt = elapsed_s(t0);
    expect(dt < 10.0, "time budget blown: " + fmt2(dt) + " s >= 10 s");
    return std::to_string(trials) + "/" + std::to_string(trials) +
           " randomized placements match the exhaustive oracle exactly (" + fmt2(dt) + " s)";
}

// ---------------------------------------------------------------------------
// Criterion 2: closed-form anchors and the throughput cap.

std::string criterion2() {
    SiteState s;
    s.id = "anchor";
    s.capability = 5.0;
    s.queue_length = 10;
    s.load = 0.5;
    CostWeights w;
    w.w5 = 1.0;
    w.w6 = 1.0;
    w.w7 = 1.0;
    const double cc = compute_cost(s, w);
    expect(cc == 4.5, "compute cost anchor: expected 4.5, got " + fmt(cc));

    const double n = littles_n(2.0, 5.0);
    expect(n == 10.0, "Little's law anchor: expected 10, got " + fmt(n));

    std::mt19937_64 rng(splitmix64(0x1d1a7a02ULL));
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        NetworkLink link = make_link("a", "b", std::pow(10.0, uniform_real(rng, 3.0, 10.0)),
                                     uniform_real(rng, 1e-9, 1.0), uniform_real(rng, 1e-4, 2.0),
                                     uniform_real(rng, 100.0, 9000.0));
        const double thr = tcp_throughput(link);
        expect(thr > 0.0 && thr <= link.bandwidth,
               "throughput " + fmt(thr) + " escapes (0, bandwidth=" + fmt(link.bandwidth) +
                   "] at loss " + fmt(link.loss_prob) + ", rtt " + fmt(link.rtt));
    }
    return "compute-cost and Little's-law anchors exact; throughput capped by bandwidth over " +
           std::to_string(trials) + " random links";
}

// ---------------------------------------------------------------------------
// Criterion 3: saturated single-site runs — everybody finishes, and no wait
// exceeds num_levels * time_threshold plus the service of work that was
// already ahead at the job's final promotion.

struct QueuedState {
    int level = 0;
    std::uint64_t entry_seq = 0;
};

double wait_bound(JobId self, int level, std::uint64_t entry_seq,
                  const std::map<JobId, QueuedState>& queued,
                  const std::map<JobId, double>& in_service,
                  const std::map<JobId, double>& service, const PriorityPolicy& pol) {
    double ahead = 0.0;
    for (const auto& [job, qs] : queued) {
        if (job == self) continue;
        if (qs.level < level || (qs.level == level && qs.entry_seq < entry_seq)) {
            auto it = service.find(job);
            ahead += it == service.end() ? 0.0 : it->second;
        }
    }
    for (const auto& [job, svc] : in_service) {
        (void)job;
        ahead += svc;
    }
    return pol.num_levels * pol.time_threshold + ahead + 1e-6;
}

// Replays one log, checking the dispatch wait of every job against the bound
// frozen at its most recent queue entry (enqueue or promotion). Returns the
// smallest slack seen.
double check_wait_bound(const EventLog& log, const PriorityPolicy& pol) {
    std::map<JobId, double> service;
    for (const auto& ev : log.events)
        if (ev.kind == EventKind::exec_start && ev.job)
            service[*ev.job] = std::get<ExecInfo>(ev.payload).service_time;

    std::map<JobId, QueuedState> queued;
    std::map<JobId, double> in_service;
    std::map<JobId, double> first_enqueue;
    std::map<JobId, double> bound;
    double min_slack = std::numeric_limits<double>::infinity();

    for (const auto& ev : log.events) {
        switch (ev.kind) {
            case EventKind::enqueue: {
                const JobId j = *ev.job;
                first_enqueue.emplace(j, ev.time);
                const int level = std::get<EnqueueInfo>(ev.payload).level;
                queued[j] = {level, ev.seq};
                bound[j] = wait_bound(j, level, ev.seq, queued, in_service, service, pol);
                break;
            }
            case EventKind::promotion:
            case EventKind::demotion: {
                const JobId j = *ev.job;
                const int level = std::get<LevelChange>(ev.payload).to;
                queued[j] = {level, ev.seq};
                bound[j] = wait_bound(j, level, ev.seq, queued, in_service, service, pol);
                break;
            }
            case EventKind::transfer_start: {
                if (std::get<TransferInfo>(ev.payload).leg != TransferLeg::inbound) break;
                const JobId j = *ev.job;
                const double wait = ev.time - first_enqueue.at(j);
                const double limit = bound.at(j);
                expect(wait <= limit,
                       "job " + std::to_string(j) + " waited " + fmt(wait) +
                           " s, above its bound of " + fmt(limit) + " s");
                min_slack = std::min(min_slack, limit - wait);
                queued.erase(j);
                auto it = service.find(j);
                in_service[j] = it == service.end() ? 0.0 : it->second;
                break;
            }
            case EventKind::exec_end:
                in_service.erase(*ev.job);
                break;
            default:
                break;
        }
    }
    return min_slack;
}

std::string criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    const int runs = 100;
    std::size_t total_jobs = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < runs; ++i) {
        std::mt19937_64 shape(splitmix64(0xacce5503ULL + static_cast<std::uint64_t>(i)));
        Scenario sc;
        sc.sites = {make_site("solo", 1.0, 1)};
        sc.policy.num_levels = 3;
        sc.policy.base_level = 1;
        sc.policy.job_threshold = 5;
        sc.policy.time_threshold = 5.0;
        sc.policy.decay_per_excess_job = 1.0;
        sc.policy.aging_step = 1.0;
        sc.policy.sjf_ordering = true;
        sc.workload.users = 1 + uniform_index(shape, 3);
        sc.workload.bursts_per_user = 2 + uniform_index(shape, 3);
        sc.workload.burst_size = Distribution::uniform(3, 8);
        sc.workload.inter_arrival = Distribution::exponential(2.0);
        sc.workload.compute_demand = Distribution::uniform(0.5, 2.0);
        sc.workload.processors_required = Distribution::constant(1);
        sc.scheduler_kind = SchedulerKind::diana;
        sc.duration = 2000.0;
        sc.seed = 1000 + static_cast<std::uint64_t>(i);
        sc.aging_tick = 1.25;
        sc.estimate_window = 5.0;

        EventLog log = run_and_audit(sc);
        const std::size_t arrived = count_kind(log, EventKind::arrival);
        const std::size_t delivered = count_completions(log);
        expect(arrived == delivered, "run " + std::to_string(i) + ": " + std::to_string(arrived) +
                                         " arrivals but only " + std::to_string(delivered) +
                                         " deliveries");
        total_jobs += arrived;
        try {
            min_slack = std::min(min_slack, check_wait_bound(log, sc.policy));
        } catch (const CheckFailure& f) {
            throw CheckFailure{"run " + std::to_string(i) + ": " + f.what};
        }
    }
    const double dt = elapsed_s(t0);
    expect(dt < 60.0, "time budget blown: " + fmt2(dt) + " s >= 60 s");
    return std::to_string(runs) + " saturated aging runs, " + std::to_string(total_jobs) +
           " jobs all delivered, every dispatch wait within bound (min slack " + fmt2(min_slack) +
           " s, " + fmt2(dt) + " s)";
}

// ---------------------------------------------------------------------------
// Criterion 4: migration engages only past the local capacity knee and grows
// with the submission rate.

std::string criterion4() {
    const std::vector<double> rates = {0.5, 0.8, 1.25, 2.0, 4.0};
    std::vector<std::size_t> migrated;
    for (double rate : rates) {
        Scenario sc;
        sc.sites = {make_site("A", 1.0, 1), make_site("B", 1.0, 4)};
        full_mesh(sc, 1e8, 0.01, 0.1);
        sc.policy.num_levels = 3;
        sc.policy.base_level = 1;
        sc.policy.job_threshold = 10;
        sc.policy.time_threshold = 10.0;
        sc.workload.users = 1;
        sc.workload.bursts_per_user = 100;
        sc.workload.burst_size = Distribution::constant(1);
        sc.workload.inter_arrival = Distribution::constant(1.0 / rate);
        sc.workload.compute_demand = Distribution::constant(1.0);
        sc.workload.processors_required = Distribution::constant(1);
        // The input must be heavy enough that placement sticks to its home
        // and queue pressure is relieved by migration, not by scattering the
        // initial placements.
        sc.workload.input_bytes = Distribution::constant(1e6);
        sc.workload.data_placement.rule = DataPlacement::Rule::single_home;
        sc.workload.data_placement.home = "A";
        sc.scheduler_kind = SchedulerKind::diana;
        sc.duration = 1000.0;
        sc.seed = 11;
        sc.aging_tick = 2.5;
        sc.estimate_window = 10.0;

        EventLog log = run_and_audit(sc);
        expect(count_kind(log, EventKind::arrival) == count_completions(log),
               "rate " + fmt(rate) + ": not every job was delivered");
        migrated.push_back(count_kind(log, EventKind::export_job));
    }
    expect(migrated[0] == 0, "rate 0.5 is below capacity yet migrated " +
                                 std::to_string(migrated[0]) + " jobs");
    expect(migrated[1] == 0, "rate 0.8 is below capacity yet migrated " +
                                 std::to_string(migrated[1]) + " jobs");
    for (std::size_t i = 1; i < migrated.size(); ++i)
        expect(migrated[i] >= migrated[i - 1],
               "migrated count fell from " + std::to_string(migrated[i - 1]) + " to " +
                   std::to_string(migrated[i]) + " between rates " + fmt(rates[i - 1]) + " and " +
                   fmt(rates[i]));
    expect(migrated.back() > 0, "no migration even at four times capacity");

    SeriesTable table;
    table.columns = {"submission_rate", "jobs_migrated"};
    for (std::size_t i = 0; i < rates.size(); ++i)
        table.rows.push_back({rates[i], static_cast<double>(migrated[i])});
    const std::string series_path = "acceptance_migration_vs_rate.csv";
    std::ofstream os(series_path, std::ios::binary | std::ios::trunc);
    write_series_csv(table, os);
    expect(os.good(), "could not write " + series_path);

    std::ostringstream detail;
    detail << "migrated jobs by rate {";
    for (std::size_t i = 0; i < rates.size(); ++i)
        detail << (i ? ", " : "") << fmt(rates[i]) << ": " << migrated[i];
    detail << "} (series in " << series_path << ")";
    return detail.str();
}

// ---------------------------------------------------------------------------
// Criterion 5: four-site skewed-data comparison, data-aware vs compute-only.

Scenario c5_scenario(std::size_t total_jobs, std::uint64_t seed, SchedulerKind kind) {
    Scenario sc;
    for (int i = 0; i < 4; ++i) sc.sites.push_back(make_site("S" + std::to_string(i), 10.0, 4));
    full_mesh(sc, 1e8, 0.01, 0.1);
    sc.workload.users = 4;
    sc.workload.bursts_per_user = total_jobs / 20;  // 4 users x 5 jobs per burst
    sc.workload.burst_size = Distribution::constant(5);
    sc.workload.inter_arrival = Distribution::exponential(15.0);
    sc.workload.compute_demand = Distribution::uniform(5.0, 15.0);
    sc.workload.processors_required = Distribution::constant(1);
    sc.workload.input_bytes = Distribution::constant(8e6);
    sc.workload.data_placement.rule = DataPlacement::Rule::single_home;
    sc.workload.data_placement.home = "S0";
    sc.scheduler_kind = kind;
    sc.duration = 1e5;
    sc.seed = seed;
    sc.aging_tick = 15.0;
    sc.estimate_window = 60.0;
    return sc;
}

std::string criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::size_t> counts = {100, 200, 400, 800};
    const std::vector<std::uint64_t> seeds = {101, 102, 103, 104, 105};
    std::ostringstream detail;
    detail << "seed-averaged mean turnaround, data-aware vs compute-only:";
    double final_gain = 0.0;
    for (std::size_t n : counts) {
        double sum_aware = 0.0;
        double sum_greedy = 0.0;
        for (std::uint64_t seed : seeds) {
            for (SchedulerKind kind : {SchedulerKind::diana, SchedulerKind::greedy_compute}) {
                EventLog log = run_and_audit(c5_scenario(n, seed, kind));
                MetricsSummary m = compute_metrics(log);
                expect(m.submitted == n, "expected " + std::to_string(n) + " jobs, generated " +
                                             std::to_string(m.submitted));
                expect(m.completed == m.submitted,
                       std::to_string(n) + " jobs, seed " + std::to_string(seed) +
                           ": incomplete run under " + std::string(to_string(kind)));
                (kind == SchedulerKind::diana ? sum_aware : sum_greedy) += m.mean_turnaround;
            }
        }
        const double aware = sum_aware / static_cast<double>(seeds.size());
        const double greedy = sum_greedy / static_cast<double>(seeds.size());
        expect(aware <= greedy, "at " + std::to_string(n) + " jobs the data-aware mean " +
                                    fmt(aware) + " s exceeds compute-only " + fmt(greedy) + " s");
        if (n == counts.back()) {
            final_gain = (greedy - aware) / greedy;
            expect(final_gain >= 0.10,
                   "at 800 jobs the data-aware advantage is only " + fmt2(100 * final_gain) +
                       "% (needs >= 10%)");
        }
        detail << " " << n << ": " << fmt2(aware) << " vs " << fmt2(greedy) << ";";
    }
    const double dt = elapsed_s(t0);
    expect(dt < 300.0, "time budget blown: " + fmt2(dt) + " s >= 300 s");
    detail << " advantage at 800 jobs " << fmt2(100 * final_gain) << "% (" << fmt2(dt) << " s)";
    return detail.str();
}

// ---------------------------------------------------------------------------
// Criterion 6: Little's-law residuals on a steady stochastic run and on the
// constant-rate scenario with a closed-form trace.

std::string criterion6() {
    std::vector<Diagnostic> diags;
    Scenario analytic = scenario_from_json_text(testsup::golden_scenario_text(), diags);
    expect(diags.empty(), "the constant-rate scenario failed validation");
    MetricsSummary ma = compute_metrics(run_and_audit(analytic));
    expect(ma.littles_residual <= 0.05, "constant-rate residual " + fmt(ma.littles_residual) +
                                            " above the 0.05 analytic tolerance");

    Scenario steady;
    steady.sites = {make_site("hub", 1.0, 4)};
    steady.workload.users = 2;
    steady.workload.bursts_per_user = 150;
    steady.workload.burst_size = Distribution::constant(1);
    steady.workload.inter_arrival = Distribution::exponential(3.0);
    steady.workload.compute_demand = Distribution::uniform(2.0, 6.0);
    steady.workload.processors_required = Distribution::constant(1);
    steady.scheduler_kind = SchedulerKind::diana;
    steady.duration = 20000.0;
    steady.seed = 42;
    steady.aging_tick = 15.0;
    steady.estimate_window = 60.0;
    MetricsSummary ms = compute_metrics(run_and_audit(steady));
    expect(ms.completed == ms.submitted, "steady run left jobs unfinished");
    expect(ms.littles_residual <= 0.15,
           "steady-load residual " + fmt(ms.littles_residual) + " above 0.15");

    return "Little's-law residuals: steady load " + fmt2(ms.littles_residual) +
           " <= 0.15, constant rate " + fmt2(ma.littles_residual) + " <= 0.05";
}

// ---------------------------------------------------------------------------
// Criterion 7: shortest-job-first never loses to FIFO on mean waiting time,
// averaged over 50 seeded saturated runs.

std::string criterion7() {
    const int seeds = 50;
    double sum_sjf = 0.0;
    double sum_fifo = 0.0;
    int wins = 0;
    for (int s = 0; s < seeds; ++s) {
        double waiting[2] = {0.0, 0.0};
        for (int pick = 0; pick < 2; ++pick) {
            const bool sjf = pick == 0;
            Scenario sc;
            sc.sites = {make_site("solo", 1.0, 4)};
            sc.policy.sjf_ordering = sjf;
            sc.workload.users = 2;
            sc.workload.bursts_per_user = 3;
            sc.workload.burst_size = Distribution::constant(8);
            sc.workload.inter_arrival = Distribution::exponential(4.0);
            sc.workload.compute_demand = Distribution::constant(2.0);
            sc.workload.processors_required = Distribution::uniform(1, 4);
            sc.workload.scale_demand_by_processors = true;
            sc.scheduler_kind = SchedulerKind::diana;
            sc.duration = 5000.0;
            sc.seed = 4200 + static_cast<std::uint64_t>(s);
            sc.aging_tick = 15.0;
            sc.estimate_window = 60.0;

            MetricsSummary m = compute_metrics(run_and_audit(sc));
            expect(m.completed == m.submitted,
                   "seed " + std::to_string(s) + ": incomplete run");
            waiting[pick] = m.mean_waiting;
        }
        sum_sjf += waiting[0];
        sum_fifo += waiting[1];
        if (waiting[0] <= waiting[1]) ++wins;
    }
    const double mean_sjf = sum_sjf / seeds;
    const double mean_fifo = sum_fifo / seeds;
    expect(mean_sjf <= mean_fifo, "SJF mean waiting " + fmt(mean_sjf) +
                                      " s exceeds FIFO's " + fmt(mean_fifo) + " s");
    return "mean waiting over " + std::to_string(seeds) + " saturated seeds: SJF " +
           fmt2(mean_sjf) + " s vs FIFO " + fmt2(mean_fifo) + " s (SJF no worse in " +
           std::to_string(wins) + "/" + std::to_string(seeds) + ")";
}

// ---------------------------------------------------------------------------
// Criterion 8: the run command is bit-reproducible.

std::string criterion8() {
    testsup::TempDir td;
    const auto scenario_path = td.path / "scenario.json";
    testsup::write_file(scenario_path, testsup::golden_scenario_text());

    const std::vector<std::string> artifacts = {"events.csv", "summary.csv",
                                                "local_vs_migrated.csv", "events.json",
                                                "results.json"};
    std::map<std::string, std::string> first;
    for (int round = 0; round < 2; ++round) {
        cli::Options opt;
        opt.scenario_path = scenario_path.string();
        opt.out_dir = (td.path / ("run" + std::to_string(round))).string();
        opt.verbosity = 0;
        std::ostringstream out, err;
        const int rc = cli::cmd_run(opt, out, err);
        expect(rc == 0, "run " + std::to_string(round) + " exited " + std::to_string(rc) + ": " +
                            err.str());
        for (const auto& name : artifacts) {
            const std::string body = testsup::read_file(std::filesystem::path(opt.out_dir) / name);
            expect(!body.empty(), name + " is missing or empty in run " + std::to_string(round));
            if (round == 0) {
                first[name] = body;
            } else {
                expect(first.at(name) == body, name + " differs between identical runs");
            }
        }
    }
    return "two identical runs produced byte-identical artifacts (" +
           std::to_string(artifacts.size()) + " files compared)";
}

// ---------------------------------------------------------------------------
// Criterion 9: no job is ever exported twice, across every log the other
// criteria produced.

std::string criterion9() {
    expect(g_logs_scanned > 0, "no event logs were collected");
    expect(g_rehop_violations == 0,
           std::to_string(g_rehop_violations) + " jobs were exported more than once");
    return "no repeat exports in any of " + std::to_string(g_logs_scanned) +
           " recorded simulation runs";
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::string (*fn)();
    };
    const Entry entries[] = {
        {1, "site selection matches the exhaustive cost oracle", criterion1},
        {2, "cost-model anchors hold and throughput is capped", criterion2},
        {3, "aging bounds every wait on saturated sites", criterion3},
        {4, "migration count tracks the submission rate", criterion4},
        {5, "data-aware placement beats compute-only placement", criterion5},
        {6, "Little's-law residuals stay within tolerance", criterion6},
        {7, "shortest-job-first does not lose to FIFO on waiting", criterion7},
        {8, "identical runs are byte-identical", criterion8},
        {9, "no job is exported more than once", criterion9},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        std::string verdict;
        std::string detail;
        try {
            detail = entry.fn();
            verdict = "PASS";
        } catch (const CheckFailure& f) {
            detail = f.what;
            verdict = "FAIL";
            ++failures;
        } catch (const std::exception& e) {
            detail = std::string("unexpected error: ") + e.what();
            verdict = "FAIL";
            ++failures;
        }
        std::cout << verdict << ": criterion " << entry.id << " - " << entry.name << " - "
                  << detail << "\n"
                  << std::flush;
    }
    if (failures == 0) {
        std::cout << "all 9 acceptance criteria hold\n";
    } else {
        std::cout << failures << " of 9 acceptance criteria failed\n";
    }
    return failures == 0 ? 0 : 1;
}
