#include "diana/queues.hpp"

#include <algorithm>
#include <cmath>

#include "diana/errors.hpp"

namespace diana {

int effective_priority(const UserStats& stats, double wait_time, const PriorityPolicy& policy) {
    double excess = stats.jobs_in_window > policy.job_threshold
                        ? static_cast<double>(stats.jobs_in_window - policy.job_threshold)
                        : 0.0;
    double aged = policy.time_threshold > 0.0 ? std::floor(wait_time / policy.time_threshold) : 0.0;
    double level = static_cast<double>(policy.base_level) + policy.decay_per_excess_job * excess -
                   policy.aging_step * aged;
    double floored = std::floor(level);
    if (floored < 0.0) return 0;
    if (floored > static_cast<double>(policy.num_levels - 1)) return policy.num_levels - 1;
    return static_cast<int>(floored);
}

FeedbackQueues::FeedbackQueues(PriorityPolicy policy) : policy_(policy) {
    if (policy_.num_levels < 2)
        raise(ErrorKind::validation, "priority policy: num_levels must be >= 2");
    if (policy_.base_level < 0 || policy_.base_level >= policy_.num_levels)
        raise(ErrorKind::validation, "priority policy: base_level must be in [0, num_levels)");
    if (policy_.time_threshold <= 0.0)
        raise(ErrorKind::validation, "priority policy: time_threshold must be > 0");
    levels_.resize(static_cast<std::size_t>(policy_.num_levels));
}

UserStats& FeedbackQueues::stats_for(const UserId& owner, double now) {
    auto [it, inserted] = stats_.try_emplace(owner, UserStats{owner, 0, now});
    UserStats& stats = it->second;
    if (!inserted && now - stats.window_start >= policy_.time_threshold) {
        stats.window_start = now;  // tumbling window: frequency resets
        stats.jobs_in_window = 0;
    }
    return stats;
}

void FeedbackQueues::insert(Job job, int level, double now) {
    job.state = JobState::queued;
    job.enqueue_time = now;
    job.current_level = level;
    queued_ids_.insert(job.id);
    levels_[static_cast<std::size_t>(level)].push_back(Entry{std::move(job), level, 0});
}

BurstEnqueue FeedbackQueues::enqueue_burst(std::vector<Job> burst, double now) {
    if (burst.empty()) raise(ErrorKind::validation, "cannot enqueue an empty burst");
    const UserId owner = burst.front().owner;
    const BurstId burst_id = burst.front().burst;
    for (const Job& job : burst) {
        if (job.owner != owner || job.burst != burst_id)
            raise(ErrorKind::validation, "burst jobs must share one owner and burst id");
        if (job.state != JobState::pending)
            raise(ErrorKind::validation,
                  "job " + std::to_string(job.id) + " is " + to_string(job.state) + ", not pending");
        if (queued_ids_.count(job.id))
            raise(ErrorKind::duplicate_enqueue,
                  "job " + std::to_string(job.id) + " is already queued");
    }
    if (policy_.sjf_ordering) {
        std::stable_sort(burst.begin(), burst.end(), [](const Job& a, const Job& b) {
            if (a.processors_required != b.processors_required)
                return a.processors_required < b.processors_required;
            return a.id < b.id;
        });
    }
    UserStats& stats = stats_for(owner, now);
    int level = effective_priority(stats, 0.0, policy_);
    stats.jobs_in_window += burst.size();

    BurstEnqueue result{level, {}};
    result.order.reserve(burst.size());
    for (Job& job : burst) {
        result.order.push_back(job.id);
        insert(std::move(job), level, now);
    }
    return result;
}

int FeedbackQueues::enqueue_migrated(Job job, double now) {
    if (queued_ids_.count(job.id))
        raise(ErrorKind::duplicate_enqueue, "job " + std::to_string(job.id) + " is already queued");
    UserStats& stats = stats_for(job.owner, now);
    int level = effective_priority(stats, 0.0, policy_);
    stats.jobs_in_window += 1;
    insert(std::move(job), level, now);
    return level;
}

void FeedbackQueues::requeue(Job job, double now) {
    if (queued_ids_.count(job.id))
        raise(ErrorKind::duplicate_enqueue, "job " + std::to_string(job.id) + " is already queued");
    int level = std::clamp(job.current_level, 0, policy_.num_levels - 1);
    insert(std::move(job), level, now);
}

const Job* FeedbackQueues::peek_next() const {
    for (const auto& level : levels_)
        if (!level.empty()) return &level.front().job;
    return nullptr;
}

std::optional<Job> FeedbackQueues::next_job() {
    for (auto& level : levels_) {
        if (level.empty()) continue;
        Job job = std::move(level.front().job);
        level.pop_front();
        queued_ids_.erase(job.id);
        return job;
    }
    return std::nullopt;
}

std::vector<Promotion> FeedbackQueues::apply_aging(double now) {
    std::vector<Promotion> promotions;
    if (policy_.aging_step <= 0.0) return promotions;

    // Collect movers level by level, then append to the destinations afterwards
    // so order within each batch survives and nothing is visited twice.
    std::vector<Entry> moved;
    std::vector<int> targets;
    for (int lvl = 0; lvl < policy_.num_levels; ++lvl) {
        auto& queue = levels_[static_cast<std::size_t>(lvl)];
        std::deque<Entry> kept;
        for (Entry& entry : queue) {
            double waited = now - entry.job.enqueue_time;
            int multiples = waited > 0.0
                                ? static_cast<int>(std::floor(waited / policy_.time_threshold))
                                : 0;
            int target = lvl;
            if (multiples > entry.aging_multiples) {
                entry.aging_multiples = multiples;
                double raw = std::floor(static_cast<double>(entry.enqueue_level) -
                                        policy_.aging_step * multiples);
                target = raw < 0.0 ? 0 : static_cast<int>(raw);
                if (target > lvl) target = lvl;  // aging never demotes
            }
            if (target < lvl) {
                moved.push_back(std::move(entry));
                targets.push_back(target);
            } else {
                kept.push_back(std::move(entry));
            }
        }
        queue = std::move(kept);
    }
    for (std::size_t i = 0; i < moved.size(); ++i) {
        Entry& entry = moved[i];
        promotions.push_back(Promotion{entry.job.id, entry.job.current_level, targets[i]});
        entry.job.current_level = targets[i];
        levels_[static_cast<std::size_t>(targets[i])].push_back(std::move(entry));
    }
    return promotions;
}

QueueSnapshot FeedbackQueues::snapshot() const {
    QueueSnapshot snap;
    snap.per_level.reserve(levels_.size());
    for (const auto& level : levels_) {
        snap.per_level.push_back(level.size());
        snap.total += level.size();
    }
    return snap;
}

std::vector<JobId> FeedbackQueues::export_order() const {
    std::vector<JobId> order;
    order.reserve(queued_ids_.size());
    for (auto lvl = levels_.rbegin(); lvl != levels_.rend(); ++lvl)
        for (auto it = lvl->rbegin(); it != lvl->rend(); ++it) order.push_back(it->job.id);
    return order;
}

const Job* FeedbackQueues::find(JobId id) const {
    for (const auto& level : levels_)
        for (const Entry& entry : level)
            if (entry.job.id == id) return &entry.job;
    return nullptr;
}

Job FeedbackQueues::take(JobId id) {
    for (auto& level : levels_) {
        for (auto it = level.begin(); it != level.end(); ++it) {
            if (it->job.id != id) continue;
            Job job = std::move(it->job);
            level.erase(it);
            queued_ids_.erase(id);
            return job;
        }
    }
    raise(ErrorKind::validation, "job " + std::to_string(id) + " is not queued here");
}

}  // namespace diana
