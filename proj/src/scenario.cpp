#include "diana/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "diana/errors.hpp"

namespace diana {

using nlohmann::json;

const char* to_string(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::diana: return "diana";
        case SchedulerKind::greedy_compute: return "greedy_compute";
        case SchedulerKind::random: return "random";
    }
    return "?";
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

namespace {

using Diags = std::vector<Diagnostic>;

void err(Diags& diags, const std::string& path, const std::string& message) {
    diags.push_back(Diagnostic{path, message});
}

bool site_id_ok(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                Diags& diags) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) err(diags, path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key, bool required,
                  double fallback, Diags& diags, bool* present = nullptr) {
    if (present) *present = false;
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) err(diags, path + "." + key, "required field is missing");
        return fallback;
    }
    if (!it->is_number()) {
        err(diags, path + "." + key, "must be a number");
        return fallback;
    }
    if (present) *present = true;
    return it->get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& path, const char* key, bool required,
                         std::int64_t fallback, Diags& diags) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) err(diags, path + "." + key, "required field is missing");
        return fallback;
    }
    if (!it->is_number_integer()) {
        err(diags, path + "." + key, "must be an integer");
        return fallback;
    }
    return it->get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback,
              Diags& diags) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) {
        err(diags, path + "." + key, "must be true or false");
        return fallback;
    }
    return it->get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, bool required,
                       const std::string& fallback, Diags& diags) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (required) err(diags, path + "." + key, "required field is missing");
        return fallback;
    }
    if (!it->is_string()) {
        err(diags, path + "." + key, "must be a string");
        return fallback;
    }
    return it->get<std::string>();
}

Distribution parse_distribution(const json& obj, const std::string& path, Diags& diags) {
    Distribution dist = Distribution::constant(0.0);
    if (!obj.is_object()) {
        err(diags, path, "must be an object like {\"kind\": \"constant\", \"value\": 1}");
        return dist;
    }
    check_keys(obj, path, {"kind", "value", "lo", "hi", "mean"}, diags);
    std::string kind = get_string(obj, path, "kind", true, "constant", diags);
    if (kind == "constant") {
        dist = Distribution::constant(get_number(obj, path, "value", true, 0.0, diags));
        if (!std::isfinite(dist.value)) err(diags, path + ".value", "must be finite");
    } else if (kind == "uniform") {
        double lo = get_number(obj, path, "lo", true, 0.0, diags);
        double hi = get_number(obj, path, "hi", true, 0.0, diags);
        if (!std::isfinite(lo) || !std::isfinite(hi)) err(diags, path, "bounds must be finite");
        if (hi < lo) err(diags, path, "hi must be >= lo");
        dist = Distribution::uniform(lo, hi);
    } else if (kind == "exponential") {
        double mean = get_number(obj, path, "mean", true, 1.0, diags);
        if (!std::isfinite(mean) || mean <= 0.0) err(diags, path + ".mean", "must be > 0");
        dist = Distribution::exponential(mean);
    } else {
        err(diags, path + ".kind", "must be one of constant, uniform, exponential");
    }
    return dist;
}

json distribution_json(const Distribution& d) {
    json j;
    switch (d.kind) {
        case Distribution::Kind::constant:
            j["kind"] = "constant";
            j["value"] = d.value;
            break;
        case Distribution::Kind::uniform:
            j["kind"] = "uniform";
            j["lo"] = d.lo;
            j["hi"] = d.hi;
            break;
        case Distribution::Kind::exponential:
            j["kind"] = "exponential";
            j["mean"] = d.mean;
            break;
    }
    return j;
}

void parse_sites(const json& root, Scenario& sc, Diags& diags) {
    auto it = root.find("sites");
    if (it == root.end() || !it->is_array() || it->empty()) {
        err(diags, "sites", "must be a non-empty array of site objects");
        return;
    }
    std::set<SiteId> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& s = (*it)[i];
        std::string path = "sites[" + std::to_string(i) + "]";
        if (!s.is_object()) {
            err(diags, path, "must be an object");
            continue;
        }
        check_keys(s, path, {"id", "capability", "processors", "load", "queue_length", "hosted_data"},
                   diags);
        SiteState site;
        site.id = get_string(s, path, "id", true, "", diags);
        if (!site.id.empty() && !site_id_ok(site.id))
            err(diags, path + ".id", "may only contain letters, digits, '_', '.', '-'");
        if (!site.id.empty() && !seen.insert(site.id).second)
            err(diags, path + ".id", "duplicate site id " + site.id);
        site.capability = get_number(s, path, "capability", true, 0.0, diags);
        if (!(site.capability > 0.0) || !std::isfinite(site.capability))
            err(diags, path + ".capability", "must be finite and > 0");
        site.processors = static_cast<int>(get_integer(s, path, "processors", false, 1, diags));
        if (site.processors < 1) err(diags, path + ".processors", "must be >= 1");
        site.load = get_number(s, path, "load", false, 0.0, diags);
        if (!(site.load >= 0.0 && site.load <= 1.0))
            err(diags, path + ".load", "must be in [0, 1]");
        auto ql = get_integer(s, path, "queue_length", false, 0, diags);
        if (ql < 0) err(diags, path + ".queue_length", "must be >= 0");
        site.queue_length = ql < 0 ? 0 : static_cast<std::size_t>(ql);
        if (auto hd = s.find("hosted_data"); hd != s.end()) {
            if (!hd->is_array())
                err(diags, path + ".hosted_data", "must be an array of strings");
            else
                for (const auto& name : *hd) {
                    if (!name.is_string())
                        err(diags, path + ".hosted_data", "must be an array of strings");
                    else
                        site.hosted_data.insert(name.get<std::string>());
                }
        }
        sc.sites.push_back(std::move(site));
    }
    std::sort(sc.sites.begin(), sc.sites.end(),
              [](const SiteState& a, const SiteState& b) { return a.id < b.id; });
}

void parse_topology(const json& root, Scenario& sc, Diags& diags) {
    auto it = root.find("topology");
    if (it == root.end()) {
        if (sc.sites.size() > 1) err(diags, "topology", "required when there is more than one site");
        return;
    }
    if (!it->is_array()) {
        err(diags, "topology", "must be an array of link objects");
        return;
    }
    std::set<SiteId> site_ids;
    for (const SiteState& s : sc.sites) site_ids.insert(s.id);
    std::set<std::pair<SiteId, SiteId>> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& l = (*it)[i];
        std::string path = "topology[" + std::to_string(i) + "]";
        if (!l.is_object()) {
            err(diags, path, "must be an object");
            continue;
        }
        check_keys(l, path, {"src", "dst", "bandwidth", "loss_prob", "rtt", "mss"}, diags);
        NetworkLink link;
        link.src = get_string(l, path, "src", true, "", diags);
        link.dst = get_string(l, path, "dst", true, "", diags);
        if (!link.src.empty() && !site_ids.count(link.src))
            err(diags, path + ".src", "unknown site " + link.src);
        if (!link.dst.empty() && !site_ids.count(link.dst))
            err(diags, path + ".dst", "unknown site " + link.dst);
        if (!link.src.empty() && link.src == link.dst)
            err(diags, path, "self links are implicit and cannot be declared");
        link.bandwidth = get_number(l, path, "bandwidth", true, 0.0, diags);
        if (!(link.bandwidth > 0.0) || !std::isfinite(link.bandwidth))
            err(diags, path + ".bandwidth", "must be finite and > 0");
        link.rtt = get_number(l, path, "rtt", true, 0.0, diags);
        if (!(link.rtt > 0.0) || !std::isfinite(link.rtt))
            err(diags, path + ".rtt", "must be finite and > 0");
        link.mss = get_number(l, path, "mss", false, 1460.0, diags);
        if (!(link.mss > 0.0) || !std::isfinite(link.mss))
            err(diags, path + ".mss", "must be finite and > 0");
        link.loss_prob = get_number(l, path, "loss_prob", true, 0.0, diags);
        if (!std::isfinite(link.loss_prob) || link.loss_prob < 0.0 || link.loss_prob > 1.0) {
            err(diags, path + ".loss_prob", "must be in [0, 1]");
        } else if (link.loss_prob < sc.weights.min_loss_prob) {
            // Zero loss would make the throughput formula singular; clamp and note it.
            sc.warnings.push_back(path + ": loss_prob " + format_double(link.loss_prob) +
                                  " clamped up to " + format_double(sc.weights.min_loss_prob));
            link.loss_prob = sc.weights.min_loss_prob;
        }
        if (!link.src.empty() && !link.dst.empty() && link.src != link.dst &&
            site_ids.count(link.src) && site_ids.count(link.dst)) {
            if (!seen.insert({link.src, link.dst}).second)
                err(diags, path, "duplicate link " + link.src + "->" + link.dst);
            else
                sc.topology.add(link);
        }
    }
    // Placement quotes every site, so every ordered pair must have a link.
    for (const SiteState& a : sc.sites)
        for (const SiteState& b : sc.sites)
            if (a.id != b.id && !seen.count({a.id, b.id}))
                err(diags, "topology", "missing link " + a.id + "->" + b.id);
}

void parse_weights(const json& root, Scenario& sc, Diags& diags) {
    auto it = root.find("weights");
    if (it == root.end()) return;
    if (!it->is_object()) {
        err(diags, "weights", "must be an object");
        return;
    }
    const json& w = *it;
    check_keys(w, "weights",
               {"w5", "w6", "w7", "alpha", "beta", "gamma", "ref_bandwidth", "min_loss_prob"},
               diags);
    CostWeights& cw = sc.weights;
    cw.w5 = get_number(w, "weights", "w5", false, cw.w5, diags);
    cw.w6 = get_number(w, "weights", "w6", false, cw.w6, diags);
    cw.w7 = get_number(w, "weights", "w7", false, cw.w7, diags);
    cw.alpha = get_number(w, "weights", "alpha", false, cw.alpha, diags);
    cw.beta = get_number(w, "weights", "beta", false, cw.beta, diags);
    cw.gamma = get_number(w, "weights", "gamma", false, cw.gamma, diags);
    cw.ref_bandwidth = get_number(w, "weights", "ref_bandwidth", false, cw.ref_bandwidth, diags);
    cw.min_loss_prob = get_number(w, "weights", "min_loss_prob", false, cw.min_loss_prob, diags);
    for (const char* key : {"w5", "w6", "w7", "alpha", "beta", "gamma"}) {
        double v = w.value(key, 0.0);
        if (w.contains(key) && (!std::isfinite(v) || v < 0.0))
            err(diags, std::string("weights.") + key, "must be finite and >= 0");
    }
    if (cw.alpha + cw.beta + cw.gamma <= 0.0)
        err(diags, "weights", "alpha + beta + gamma must be > 0");
    if (!(cw.ref_bandwidth > 0.0) || !std::isfinite(cw.ref_bandwidth))
        err(diags, "weights.ref_bandwidth", "must be finite and > 0");
    if (!(cw.min_loss_prob > 0.0) || cw.min_loss_prob > 1.0)
        err(diags, "weights.min_loss_prob", "must be in (0, 1]");
}

void parse_policy(const json& root, Scenario& sc, Diags& diags) {
    auto it = root.find("policy");
    if (it == root.end()) return;
    if (!it->is_object()) {
        err(diags, "policy", "must be an object");
        return;
    }
    const json& p = *it;
    check_keys(p, "policy",
               {"num_levels", "base_level", "job_threshold", "time_threshold",
                "decay_per_excess_job", "aging_step", "sjf"},
               diags);
    PriorityPolicy& pp = sc.policy;
    pp.num_levels = static_cast<int>(get_integer(p, "policy", "num_levels", false, pp.num_levels, diags));
    if (pp.num_levels < 2) err(diags, "policy.num_levels", "must be >= 2");
    pp.base_level = static_cast<int>(get_integer(p, "policy", "base_level", false, pp.base_level, diags));
    if (pp.base_level < 0 || (pp.num_levels >= 2 && pp.base_level >= pp.num_levels))
        err(diags, "policy.base_level", "must be in [0, num_levels)");
    auto jt = get_integer(p, "policy", "job_threshold", false,
                          static_cast<std::int64_t>(pp.job_threshold), diags);
    if (jt < 0) err(diags, "policy.job_threshold", "must be >= 0");
    pp.job_threshold = jt < 0 ? 0 : static_cast<std::size_t>(jt);
    pp.time_threshold = get_number(p, "policy", "time_threshold", false, pp.time_threshold, diags);
    if (!(pp.time_threshold > 0.0) || !std::isfinite(pp.time_threshold))
        err(diags, "policy.time_threshold", "must be finite and > 0");
    pp.decay_per_excess_job =
        get_number(p, "policy", "decay_per_excess_job", false, pp.decay_per_excess_job, diags);
    if (!(pp.decay_per_excess_job >= 0.0) || !std::isfinite(pp.decay_per_excess_job))
        err(diags, "policy.decay_per_excess_job", "must be finite and >= 0");
    pp.aging_step = get_number(p, "policy", "aging_step", false, pp.aging_step, diags);
    if (!(pp.aging_step >= 0.0) || !std::isfinite(pp.aging_step))
        err(diags, "policy.aging_step", "must be finite and >= 0");
    pp.sjf_ordering = get_bool(p, "policy", "sjf", pp.sjf_ordering, diags);
}

void parse_workload(const json& root, Scenario& sc, Diags& diags) {
    auto it = root.find("workload");
    if (it == root.end() || !it->is_object()) {
        err(diags, "workload", "must be an object");
        return;
    }
    const json& w = *it;
    check_keys(w, "workload",
               {"users", "bursts_per_user", "burst_size", "inter_arrival", "compute_demand",
                "processors_required", "input_bytes", "output_bytes", "executable_bytes",
                "data_placement", "scale_demand_by_processors"},
               diags);
    WorkloadSpec& ws = sc.workload;
    auto users = get_integer(w, "workload", "users", true, 1, diags);
    if (users < 1) err(diags, "workload.users", "must be >= 1");
    ws.users = users < 1 ? 1 : static_cast<std::size_t>(users);
    auto bursts = get_integer(w, "workload", "bursts_per_user", true, 1, diags);
    if (bursts < 1) err(diags, "workload.bursts_per_user", "must be >= 1");
    ws.bursts_per_user = bursts < 1 ? 1 : static_cast<std::size_t>(bursts);
    if (w.contains("burst_size"))
        ws.burst_size = parse_distribution(w["burst_size"], "workload.burst_size", diags);
    if (w.contains("inter_arrival"))
        ws.inter_arrival = parse_distribution(w["inter_arrival"], "workload.inter_arrival", diags);
    else
        err(diags, "workload.inter_arrival", "required field is missing");
    if (w.contains("compute_demand"))
        ws.compute_demand = parse_distribution(w["compute_demand"], "workload.compute_demand", diags);
    else
        err(diags, "workload.compute_demand", "required field is missing");
    if (w.contains("processors_required"))
        ws.processors_required =
            parse_distribution(w["processors_required"], "workload.processors_required", diags);
    if (w.contains("input_bytes"))
        ws.input_bytes = parse_distribution(w["input_bytes"], "workload.input_bytes", diags);
    if (w.contains("output_bytes"))
        ws.output_bytes = parse_distribution(w["output_bytes"], "workload.output_bytes", diags);
    if (w.contains("executable_bytes"))
        ws.executable_bytes =
            parse_distribution(w["executable_bytes"], "workload.executable_bytes", diags);
    ws.scale_demand_by_processors =
        get_bool(w, "workload", "scale_demand_by_processors", false, diags);

    if (auto dp = w.find("data_placement"); dp != w.end()) {
        std::string path = "workload.data_placement";
        if (!dp->is_object()) {
            err(diags, path, "must be an object");
        } else {
            check_keys(*dp, path, {"rule", "home", "replicas"}, diags);
            std::string rule = get_string(*dp, path, "rule", true, "single_home", diags);
            if (rule == "single_home") {
                ws.data_placement.rule = DataPlacement::Rule::single_home;
                ws.data_placement.home = get_string(*dp, path, "home", false, "", diags);
                if (!ws.data_placement.home.empty()) {
                    bool known = false;
                    for (const SiteState& s : sc.sites) known = known || s.id == ws.data_placement.home;
                    if (!known) err(diags, path + ".home", "unknown site " + ws.data_placement.home);
                }
            } else if (rule == "replicated") {
                ws.data_placement.rule = DataPlacement::Rule::replicated;
                auto replicas = get_integer(*dp, path, "replicas", true, 1, diags);
                if (replicas < 1) err(diags, path + ".replicas", "must be >= 1");
                ws.data_placement.replicas = replicas < 1 ? 1 : static_cast<int>(replicas);
            } else {
                err(diags, path + ".rule", "must be single_home or replicated");
            }
        }
    }
}

void parse_rest(const json& root, Scenario& sc, Diags& diags) {
    std::string kind = get_string(root, "", "scheduler", false, "diana", diags);
    if (kind == "diana")
        sc.scheduler_kind = SchedulerKind::diana;
    else if (kind == "greedy_compute")
        sc.scheduler_kind = SchedulerKind::greedy_compute;
    else if (kind == "random")
        sc.scheduler_kind = SchedulerKind::random;
    else
        err(diags, "scheduler", "must be one of diana, greedy_compute, random");

    sc.duration = get_number(root, "", "duration", true, 0.0, diags);
    if (!(sc.duration > 0.0) || !std::isfinite(sc.duration))
        err(diags, "duration", "must be finite and > 0");

    auto seed = get_integer(root, "", "seed", false, 0, diags);
    if (seed < 0) err(diags, "seed", "must be >= 0");
    sc.seed = seed < 0 ? 0 : static_cast<std::uint64_t>(seed);

    bool have_tick = false;
    sc.aging_tick = get_number(root, "", "aging_tick", false, 0.0, diags, &have_tick);
    if (have_tick && (!(sc.aging_tick > 0.0) || !std::isfinite(sc.aging_tick)))
        err(diags, "aging_tick", "must be finite and > 0");
    if (!have_tick) sc.aging_tick = sc.policy.time_threshold / 4.0;

    bool have_window = false;
    sc.estimate_window = get_number(root, "", "estimate_window", false, 0.0, diags, &have_window);
    if (have_window && (!(sc.estimate_window > 0.0) || !std::isfinite(sc.estimate_window)))
        err(diags, "estimate_window", "must be finite and > 0");
    if (!have_window) sc.estimate_window = sc.policy.time_threshold;

    if (auto ex = root.find("export"); ex != root.end()) {
        if (!ex->is_object()) {
            err(diags, "export", "must be an object");
        } else {
            check_keys(*ex, "export", {"overload_factor", "overload_threshold"}, diags);
            sc.export_policy.overload_factor = get_number(
                *ex, "export", "overload_factor", false, sc.export_policy.overload_factor, diags);
            if (!(sc.export_policy.overload_factor > 0.0))
                err(diags, "export.overload_factor", "must be > 0");
            bool have_abs = false;
            double abs = get_number(*ex, "export", "overload_threshold", false, 0.0, diags, &have_abs);
            if (have_abs) {
                if (!(abs >= 0.0) || !std::isfinite(abs))
                    err(diags, "export.overload_threshold", "must be finite and >= 0");
                sc.export_policy.overload_threshold = abs;
            }
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate(const Scenario& sc) {
    Diags diags;
    if (sc.sites.empty()) err(diags, "sites", "must contain at least one site");
    std::set<SiteId> ids;
    for (std::size_t i = 0; i < sc.sites.size(); ++i) {
        const SiteState& s = sc.sites[i];
        std::string path = "sites[" + std::to_string(i) + "]";
        if (!site_id_ok(s.id)) err(diags, path + ".id", "invalid site id");
        if (!ids.insert(s.id).second) err(diags, path + ".id", "duplicate site id " + s.id);
        if (!(s.capability > 0.0) || !std::isfinite(s.capability))
            err(diags, path + ".capability", "must be finite and > 0");
        if (s.processors < 1) err(diags, path + ".processors", "must be >= 1");
        if (!(s.load >= 0.0 && s.load <= 1.0)) err(diags, path + ".load", "must be in [0, 1]");
    }
    for (const SiteState& a : sc.sites)
        for (const SiteState& b : sc.sites)
            if (a.id != b.id && !sc.topology.find(a.id, b.id))
                err(diags, "topology", "missing link " + a.id + "->" + b.id);
    for (const auto& [key, link] : sc.topology.links()) {
        std::string path = "topology[" + key.first + "->" + key.second + "]";
        if (!ids.count(key.first)) err(diags, path, "unknown site " + key.first);
        if (!ids.count(key.second)) err(diags, path, "unknown site " + key.second);
        if (!(link.bandwidth > 0.0) || !std::isfinite(link.bandwidth))
            err(diags, path + ".bandwidth", "must be finite and > 0");
        if (!(link.rtt > 0.0) || !std::isfinite(link.rtt))
            err(diags, path + ".rtt", "must be finite and > 0");
        if (!(link.loss_prob > 0.0) || link.loss_prob > 1.0)
            err(diags, path + ".loss_prob", "must be in (0, 1]");
        if (!(link.mss > 0.0) || !std::isfinite(link.mss))
            err(diags, path + ".mss", "must be finite and > 0");
    }
    const CostWeights& w = sc.weights;
    for (auto [name, v] : std::initializer_list<std::pair<const char*, double>>{
             {"w5", w.w5}, {"w6", w.w6}, {"w7", w.w7}, {"alpha", w.alpha}, {"beta", w.beta},
             {"gamma", w.gamma}})
        if (!std::isfinite(v) || v < 0.0)
            err(diags, std::string("weights.") + name, "must be finite and >= 0");
    if (w.alpha + w.beta + w.gamma <= 0.0) err(diags, "weights", "alpha + beta + gamma must be > 0");
    if (!(w.ref_bandwidth > 0.0) || !std::isfinite(w.ref_bandwidth))
        err(diags, "weights.ref_bandwidth", "must be finite and > 0");
    if (!(w.min_loss_prob > 0.0) || w.min_loss_prob > 1.0)
        err(diags, "weights.min_loss_prob", "must be in (0, 1]");
    const PriorityPolicy& p = sc.policy;
    if (p.num_levels < 2) err(diags, "policy.num_levels", "must be >= 2");
    if (p.base_level < 0 || p.base_level >= p.num_levels)
        err(diags, "policy.base_level", "must be in [0, num_levels)");
    if (!(p.time_threshold > 0.0) || !std::isfinite(p.time_threshold))
        err(diags, "policy.time_threshold", "must be finite and > 0");
    if (!(p.decay_per_excess_job >= 0.0)) err(diags, "policy.decay_per_excess_job", "must be >= 0");
    if (!(p.aging_step >= 0.0)) err(diags, "policy.aging_step", "must be >= 0");
    if (sc.workload.users < 1) err(diags, "workload.users", "must be >= 1");
    if (sc.workload.bursts_per_user < 1) err(diags, "workload.bursts_per_user", "must be >= 1");
    if (sc.workload.data_placement.rule == DataPlacement::Rule::single_home &&
        !sc.workload.data_placement.home.empty() && !ids.count(sc.workload.data_placement.home))
        err(diags, "workload.data_placement.home",
            "unknown site " + sc.workload.data_placement.home);
    if (sc.workload.data_placement.rule == DataPlacement::Rule::replicated &&
        sc.workload.data_placement.replicas < 1)
        err(diags, "workload.data_placement.replicas", "must be >= 1");
    if (!(sc.duration > 0.0) || !std::isfinite(sc.duration))
        err(diags, "duration", "must be finite and > 0");
    if (!(sc.aging_tick > 0.0) || !std::isfinite(sc.aging_tick))
        err(diags, "aging_tick", "must be finite and > 0");
    if (!(sc.estimate_window > 0.0) || !std::isfinite(sc.estimate_window))
        err(diags, "estimate_window", "must be finite and > 0");
    if (!(sc.export_policy.overload_factor > 0.0))
        err(diags, "export.overload_factor", "must be > 0");
    if (sc.export_policy.overload_threshold && !(*sc.export_policy.overload_threshold >= 0.0))
        err(diags, "export.overload_threshold", "must be >= 0");
    return diags;
}

Scenario scenario_from_json_text(const std::string& text, std::vector<Diagnostic>& diags) {
    Scenario sc;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        err(diags, "$", std::string("parse error: ") + e.what());
        return sc;
    }
    if (!root.is_object()) {
        err(diags, "$", "scenario must be a JSON object");
        return sc;
    }
    check_keys(root, "",
               {"sites", "topology", "weights", "policy", "workload", "scheduler", "duration",
                "seed", "aging_tick", "estimate_window", "export"},
               diags);
    parse_sites(root, sc, diags);
    parse_weights(root, sc, diags);  // before topology: min_loss_prob drives clamping
    parse_topology(root, sc, diags);
    parse_policy(root, sc, diags);
    parse_workload(root, sc, diags);
    parse_rest(root, sc, diags);
    if (diags.empty()) {
        auto more = validate(sc);
        diags.insert(diags.end(), more.begin(), more.end());
    }
    return sc;
}

Scenario load_scenario(const std::string& path, std::vector<Diagnostic>& diags) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::io, "cannot open scenario file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) raise(ErrorKind::io, "cannot read scenario file " + path);
    return scenario_from_json_text(buffer.str(), diags);
}

std::string apply_override_text(const std::string& json_text, const std::string& dotted_path,
                                const std::string& value) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        raise(ErrorKind::validation, std::string("parse error: ") + e.what());
    }
    if (dotted_path.empty()) raise(ErrorKind::usage, "override path is empty");

    json parsed;
    if (value == "true") {
        parsed = true;
    } else if (value == "false") {
        parsed = false;
    } else {
        try {
            std::size_t used = 0;
            if (value.find('.') == std::string::npos && value.find('e') == std::string::npos &&
                value.find('E') == std::string::npos) {
                long long v = std::stoll(value, &used);
                parsed = used == value.size() ? json(v) : json(value);
            } else {
                double v = std::stod(value, &used);
                parsed = used == value.size() ? json(v) : json(value);
            }
        } catch (const std::exception&) {
            parsed = value;
        }
    }

    json* node = &root;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = dotted_path.find('.', start);
        std::string key = dotted_path.substr(start, dot - start);
        if (key.empty()) raise(ErrorKind::usage, "override path has an empty segment");
        if (node->is_null()) *node = json::object();  // create missing intermediate objects
        if (!node->is_object())
            raise(ErrorKind::usage, "override path " + dotted_path + " does not reach an object");
        if (dot == std::string::npos) {
            (*node)[key] = parsed;
            break;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
    return root.dump();
}

std::string canonical_json(const Scenario& sc) {
    json root;
    json sites = json::array();
    for (const SiteState& s : sc.sites) {
        json site;
        site["id"] = s.id;
        site["capability"] = s.capability;
        site["processors"] = s.processors;
        site["load"] = s.load;
        site["queue_length"] = s.queue_length;
        site["hosted_data"] = s.hosted_data;
        sites.push_back(std::move(site));
    }
    root["sites"] = std::move(sites);
    json topo = json::array();
    for (const auto& [key, link] : sc.topology.links()) {
        json l;
        l["src"] = link.src;
        l["dst"] = link.dst;
        l["bandwidth"] = link.bandwidth;
        l["loss_prob"] = link.loss_prob;
        l["rtt"] = link.rtt;
        l["mss"] = link.mss;
        topo.push_back(std::move(l));
    }
    root["topology"] = std::move(topo);
    root["weights"] = {{"w5", sc.weights.w5},
                       {"w6", sc.weights.w6},
                       {"w7", sc.weights.w7},
                       {"alpha", sc.weights.alpha},
                       {"beta", sc.weights.beta},
                       {"gamma", sc.weights.gamma},
                       {"ref_bandwidth", sc.weights.ref_bandwidth},
                       {"min_loss_prob", sc.weights.min_loss_prob}};
    root["policy"] = {{"num_levels", sc.policy.num_levels},
                      {"base_level", sc.policy.base_level},
                      {"job_threshold", sc.policy.job_threshold},
                      {"time_threshold", sc.policy.time_threshold},
                      {"decay_per_excess_job", sc.policy.decay_per_excess_job},
                      {"aging_step", sc.policy.aging_step},
                      {"sjf", sc.policy.sjf_ordering}};
    json workload;
    workload["users"] = sc.workload.users;
    workload["bursts_per_user"] = sc.workload.bursts_per_user;
    workload["burst_size"] = distribution_json(sc.workload.burst_size);
    workload["inter_arrival"] = distribution_json(sc.workload.inter_arrival);
    workload["compute_demand"] = distribution_json(sc.workload.compute_demand);
    workload["processors_required"] = distribution_json(sc.workload.processors_required);
    workload["input_bytes"] = distribution_json(sc.workload.input_bytes);
    workload["output_bytes"] = distribution_json(sc.workload.output_bytes);
    workload["executable_bytes"] = distribution_json(sc.workload.executable_bytes);
    json placement;
    if (sc.workload.data_placement.rule == DataPlacement::Rule::single_home) {
        placement["rule"] = "single_home";
        placement["home"] = sc.workload.data_placement.home;
    } else {
        placement["rule"] = "replicated";
        placement["replicas"] = sc.workload.data_placement.replicas;
    }
    workload["data_placement"] = std::move(placement);
    workload["scale_demand_by_processors"] = sc.workload.scale_demand_by_processors;
    root["workload"] = std::move(workload);
    root["scheduler"] = to_string(sc.scheduler_kind);
    root["duration"] = sc.duration;
    root["seed"] = sc.seed;
    root["aging_tick"] = sc.aging_tick;
    root["estimate_window"] = sc.estimate_window;
    json exp;
    exp["overload_factor"] = sc.export_policy.overload_factor;
    if (sc.export_policy.overload_threshold)
        exp["overload_threshold"] = *sc.export_policy.overload_threshold;
    root["export"] = std::move(exp);
    return root.dump();
}

std::string scenario_digest(const Scenario& sc) {
    std::uint64_t hash = fnv1a64(canonical_json(sc));
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace diana
