#pragma once

#include <map>
#include <utility>
#include <vector>

#include "diana/types.hpp"

namespace diana {

// Link table over ordered pairs of distinct sites. A site's link to itself is
// implicit: transfers within a site take zero time and carry zero cost.
class Topology {
public:
    Topology() = default;
    explicit Topology(std::vector<NetworkLink> links);

    void add(NetworkLink link);
    const NetworkLink* find(const SiteId& src, const SiteId& dst) const;
    // Throws an unknown-route error if the pair has no link.
    const NetworkLink& at(const SiteId& src, const SiteId& dst) const;

    std::size_t size() const { return links_.size(); }
    const std::map<std::pair<SiteId, SiteId>, NetworkLink>& links() const { return links_; }

private:
    std::map<std::pair<SiteId, SiteId>, NetworkLink> links_;
};

// Achievable TCP rate in bits/s: the Mathis estimate MSS*sqrt(3/2)/(RTT*sqrt(loss)),
// capped by the raw link bandwidth.
double tcp_throughput(const NetworkLink& link);

// Dimensionless penalty loss/bandwidth, scaled by the reference bandwidth.
double network_cost(const NetworkLink& link, const CostWeights& w);
double network_cost(const SiteId& src, const SiteId& dst, const Topology& topo,
                    const CostWeights& w);

// (queue/capability)*w5 + (queue/capability)*w6 + load*w7. The queue term is
// charged twice, under two separate weights, by design.
double compute_cost(const SiteState& site, const CostWeights& w);

// Seconds to move `bytes` across a link at its achievable TCP rate.
double transfer_time(double bytes, const NetworkLink& link);
double transfer_time(double bytes, const SiteId& src, const SiteId& dst, const Topology& topo);

// Input staging + output delivery + executable staging, in seconds, if the job
// ran at `candidate`.
double data_transfer_cost(const JobDataSpec& job, const SiteId& candidate, const Topology& topo);

// alpha*network + beta*compute + gamma*dtc, with the parts kept separate.
// The network penalty is charged on the input-data route, which dominates.
CostBreakdown total_cost(const JobDataSpec& job, const SiteState& site, const Topology& topo,
                         const CostWeights& w);

}  // namespace diana
