#include "diana/cost_model.hpp"

#include <cmath>

#include "diana/errors.hpp"

namespace diana {

namespace {

const double kMathisFactor = std::sqrt(1.5);

void check_link(const NetworkLink& link) {
    const std::string where = "link " + link.src + "->" + link.dst;
    if (!std::isfinite(link.bandwidth) || link.bandwidth <= 0.0)
        raise(ErrorKind::invalid_link, where + ": bandwidth must be finite and > 0");
    if (!std::isfinite(link.rtt) || link.rtt <= 0.0)
        raise(ErrorKind::invalid_link, where + ": rtt must be finite and > 0");
    if (!std::isfinite(link.loss_prob) || link.loss_prob <= 0.0 || link.loss_prob > 1.0)
        raise(ErrorKind::invalid_link, where + ": loss_prob must be in (0, 1]");
    if (!std::isfinite(link.mss) || link.mss <= 0.0)
        raise(ErrorKind::invalid_link, where + ": mss must be finite and > 0");
}

void check_site(const SiteState& site) {
    if (!std::isfinite(site.capability) || site.capability <= 0.0)
        raise(ErrorKind::invalid_site, "site " + site.id + ": capability must be finite and > 0");
    if (site.processors < 1)
        raise(ErrorKind::invalid_site, "site " + site.id + ": processors must be >= 1");
    if (!std::isfinite(site.load) || site.load < 0.0 || site.load > 1.0)
        raise(ErrorKind::invalid_site, "site " + site.id + ": load must be in [0, 1]");
}

}  // namespace

Topology::Topology(std::vector<NetworkLink> links) {
    for (auto& link : links) add(std::move(link));
}

void Topology::add(NetworkLink link) {
    if (link.src == link.dst)
        raise(ErrorKind::invalid_link, "link " + link.src + "->" + link.dst +
                                           ": self links are implicit and cannot be declared");
    auto key = std::make_pair(link.src, link.dst);
    links_.insert_or_assign(std::move(key), std::move(link));
}

const NetworkLink* Topology::find(const SiteId& src, const SiteId& dst) const {
    auto it = links_.find(std::make_pair(src, dst));
    return it == links_.end() ? nullptr : &it->second;
}

const NetworkLink& Topology::at(const SiteId& src, const SiteId& dst) const {
    if (const NetworkLink* link = find(src, dst)) return *link;
    raise(ErrorKind::unknown_route, "no link " + src + "->" + dst + " in topology");
}

double tcp_throughput(const NetworkLink& link) {
    check_link(link);
    double mathis = link.mss * 8.0 * kMathisFactor / (link.rtt * std::sqrt(link.loss_prob));
    return std::min(link.bandwidth, mathis);
}

double network_cost(const NetworkLink& link, const CostWeights& w) {
    check_link(link);
    return link.loss_prob / link.bandwidth * w.ref_bandwidth;
}

double network_cost(const SiteId& src, const SiteId& dst, const Topology& topo,
                    const CostWeights& w) {
    if (src == dst) return 0.0;
    return network_cost(topo.at(src, dst), w);
}

double compute_cost(const SiteState& site, const CostWeights& w) {
    check_site(site);
    double pressure = static_cast<double>(site.queue_length) / site.capability;
    return pressure * w.w5 + pressure * w.w6 + site.load * w.w7;
}

double transfer_time(double bytes, const NetworkLink& link) {
    if (bytes < 0.0 || !std::isfinite(bytes))
        raise(ErrorKind::validation, "transfer size must be finite and >= 0");
    if (bytes == 0.0) return 0.0;
    return bytes * 8.0 / tcp_throughput(link);
}

double transfer_time(double bytes, const SiteId& src, const SiteId& dst, const Topology& topo) {
    if (src == dst) return 0.0;
    if (bytes == 0.0) return 0.0;
    return transfer_time(bytes, topo.at(src, dst));
}

double data_transfer_cost(const JobDataSpec& job, const SiteId& candidate, const Topology& topo) {
    return transfer_time(job.input_bytes, job.input_source, candidate, topo) +
           transfer_time(job.output_bytes, candidate, job.output_sink, topo) +
           transfer_time(job.executable_bytes, job.executable_source, candidate, topo);
}

CostBreakdown total_cost(const JobDataSpec& job, const SiteState& site, const Topology& topo,
                         const CostWeights& w) {
    CostBreakdown b;
    try {
        // A job with no declared input has no input route to penalize.
        b.network =
            job.input_source.empty() ? 0.0 : network_cost(job.input_source, site.id, topo, w);
    } catch (const Error& e) {
        raise(e.kind(), "total cost, network term: " + std::string(e.what()));
    }
    try {
        b.compute = compute_cost(site, w);
    } catch (const Error& e) {
        raise(e.kind(), "total cost, compute term: " + std::string(e.what()));
    }
    try {
        b.dtc = data_transfer_cost(job, site.id, topo);
    } catch (const Error& e) {
        raise(e.kind(), "total cost, data transfer term: " + std::string(e.what()));
    }
    b.total = w.alpha * b.network + w.beta * b.compute + w.gamma * b.dtc;
    return b;
}

}  // namespace diana
