#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "diana/types.hpp"

namespace diana {

// Level a newly submitted job lands on: base level, pushed down by the owner's
// submission frequency beyond job_threshold, pulled up one aging step per
// time_threshold waited, clamped to [0, num_levels - 1].
int effective_priority(const UserStats& stats, double wait_time, const PriorityPolicy& policy);

struct Promotion {
    JobId job = 0;
    int from = 0;
    int to = 0;
};

struct BurstEnqueue {
    int level = 0;
    std::vector<JobId> order;  // queue order after SJF sorting
};

struct QueueSnapshot {
    std::vector<std::size_t> per_level;
    std::size_t total = 0;
};

// Multilevel feedback queues for one site. Level 0 is served first and FIFO
// order holds within a level. Bursts enter in shortest-job-first order at the
// owner's effective priority; apply_aging later promotes long waiters.
// Non-preemptive: dequeues only happen through next_job()/take().
class FeedbackQueues {
public:
    explicit FeedbackQueues(PriorityPolicy policy);

    // All jobs must be pending and share owner and burst id. Counts the burst
    // toward the owner's window, sorts it (shortest first, by processors
    // required, job id breaking ties), and appends to one level's tail.
    BurstEnqueue enqueue_burst(std::vector<Job> burst, double now);

    // Entry point for a job arriving from another site. Lands at the level this
    // site's stats give the owner and counts one job toward them.
    int enqueue_migrated(Job job, double now);

    // Re-append a dispatched job at the tail of its current level without
    // touching user stats (used when a dispatch cannot proceed).
    void requeue(Job job, double now);

    const Job* peek_next() const;
    std::optional<Job> next_job();

    // Move every job whose waited multiples of time_threshold grant it a higher
    // level. Relative order among jobs promoted together is preserved.
    std::vector<Promotion> apply_aging(double now);

    QueueSnapshot snapshot() const;
    std::size_t total_queued() const { return queued_ids_.size(); }

    // Ids in export-candidate order: lowest-priority level first, newest first
    // within a level, so long waiters and high-priority work move last.
    std::vector<JobId> export_order() const;
    const Job* find(JobId id) const;
    Job take(JobId id);

    const PriorityPolicy& policy() const { return policy_; }
    const std::map<UserId, UserStats>& user_stats() const { return stats_; }

private:
    struct Entry {
        Job job;
        int enqueue_level = 0;
        int aging_multiples = 0;
    };

    UserStats& stats_for(const UserId& owner, double now);
    void insert(Job job, int level, double now);

    PriorityPolicy policy_;
    std::vector<std::deque<Entry>> levels_;
    std::map<UserId, UserStats> stats_;
    std::set<JobId> queued_ids_;
};

}  // namespace diana
