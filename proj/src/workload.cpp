#include "diana/workload.hpp"

#include <algorithm>
#include <cmath>

#include "diana/errors.hpp"

namespace diana {

double Distribution::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::constant: return value;
        case Kind::uniform: return uniform_real(rng, lo, hi);
        case Kind::exponential: return diana::exponential(rng, mean);
    }
    return 0.0;
}

std::int64_t Distribution::sample_int(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::constant: return std::llround(value);
        case Kind::uniform: {
            auto a = std::llround(lo);
            auto b = std::llround(hi);
            if (b < a) std::swap(a, b);
            return a + static_cast<std::int64_t>(
                           uniform_index(rng, static_cast<std::uint64_t>(b - a + 1)));
        }
        case Kind::exponential: return std::llround(diana::exponential(rng, mean));
    }
    return 0;
}

Distribution Distribution::constant(double v) {
    Distribution d;
    d.kind = Kind::constant;
    d.value = v;
    return d;
}

Distribution Distribution::uniform(double lo, double hi) {
    Distribution d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

Distribution Distribution::exponential(double mean) {
    Distribution d;
    d.kind = Kind::exponential;
    d.mean = mean;
    return d;
}

namespace {

// A user's dataset replicas: k distinct sites drawn by partial Fisher-Yates.
std::vector<SiteId> pick_replicas(const std::vector<SiteId>& sites, int k,
                                  std::mt19937_64& rng) {
    std::vector<SiteId> pool = sites;
    std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, k)),
                                              pool.size());
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

std::vector<Burst> generate_workload(const WorkloadSpec& spec, const std::vector<SiteId>& sites,
                                     int max_processors, std::uint64_t seed) {
    if (sites.empty()) raise(ErrorKind::validation, "workload generation needs at least one site");
    if (!std::is_sorted(sites.begin(), sites.end()))
        raise(ErrorKind::validation, "site ids must be sorted for workload generation");
    if (max_processors < 1) raise(ErrorKind::validation, "max_processors must be >= 1");
    if (spec.data_placement.rule == DataPlacement::Rule::single_home &&
        !spec.data_placement.home.empty() &&
        !std::binary_search(sites.begin(), sites.end(), spec.data_placement.home))
        raise(ErrorKind::validation,
              "data placement home " + spec.data_placement.home + " is not a site");

    std::mt19937_64 rng(splitmix64(seed));
    std::vector<Burst> bursts;
    bursts.reserve(spec.users * spec.bursts_per_user);
    JobId next_job = 1;
    BurstId next_burst = 1;

    for (std::size_t u = 0; u < spec.users; ++u) {
        UserId owner = "u" + std::to_string(u);
        const SiteId& home = sites[u % sites.size()];
        std::vector<SiteId> replicas;
        if (spec.data_placement.rule == DataPlacement::Rule::replicated)
            replicas = pick_replicas(sites, spec.data_placement.replicas, rng);

        double clock = 0.0;
        for (std::size_t b = 0; b < spec.bursts_per_user; ++b) {
            clock += std::max(0.0, spec.inter_arrival.sample(rng));
            Burst burst;
            burst.id = next_burst++;
            burst.owner = owner;
            burst.arrival_time = clock;

            auto size = std::max<std::int64_t>(1, spec.burst_size.sample_int(rng));
            burst.jobs.reserve(static_cast<std::size_t>(size));
            for (std::int64_t i = 0; i < size; ++i) {
                Job job;
                job.id = next_job++;
                job.owner = owner;
                job.burst = burst.id;
                job.submit_time = clock;
                job.processors_required = static_cast<int>(std::clamp<std::int64_t>(
                    spec.processors_required.sample_int(rng), 1, max_processors));
                double demand = std::max(1e-9, spec.compute_demand.sample(rng));
                if (spec.scale_demand_by_processors) demand *= job.processors_required;
                job.compute_demand = demand;
                job.data.input_bytes = std::max(0.0, spec.input_bytes.sample(rng));
                job.data.output_bytes = std::max(0.0, spec.output_bytes.sample(rng));
                job.data.executable_bytes = std::max(0.0, spec.executable_bytes.sample(rng));
                job.data.output_sink = home;
                job.data.executable_source = home;
                if (spec.data_placement.rule == DataPlacement::Rule::single_home)
                    job.data.input_source =
                        spec.data_placement.home.empty() ? sites.front() : spec.data_placement.home;
                else
                    job.data.input_source = replicas[uniform_index(rng, replicas.size())];
                burst.jobs.push_back(std::move(job));
            }
            bursts.push_back(std::move(burst));
        }
    }

    std::sort(bursts.begin(), bursts.end(), [](const Burst& a, const Burst& b) {
        if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
        return a.id < b.id;
    });
    return bursts;
}

}  // namespace diana
