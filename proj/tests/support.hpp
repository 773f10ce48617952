#pragma once

// Small builders and filesystem helpers shared by the unit tests.

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "diana/errors.hpp"
#include "diana/types.hpp"

namespace testsup {

inline diana::NetworkLink link(const std::string& src, const std::string& dst, double bandwidth,
                               double loss_prob, double rtt, double mss = 1460.0) {
    diana::NetworkLink l;
    l.src = src;
    l.dst = dst;
    l.bandwidth = bandwidth;
    l.loss_prob = loss_prob;
    l.rtt = rtt;
    l.mss = mss;
    return l;
}

inline diana::SiteState site(const std::string& id, double capability, int processors = 1,
                             std::size_t queue_length = 0, double load = 0.0) {
    diana::SiteState s;
    s.id = id;
    s.capability = capability;
    s.processors = processors;
    s.queue_length = queue_length;
    s.load = load;
    return s;
}

// True when fn throws a diana::Error of the given kind whose message contains
// `needle` (when one is given).
template <typename Fn>
bool raises(diana::ErrorKind kind, Fn&& fn, const std::string& needle = "") {
    try {
        fn();
    } catch (const diana::Error& e) {
        if (e.kind() != kind) return false;
        return needle.empty() || std::string(e.what()).find(needle) != std::string::npos;
    } catch (...) {
        return false;
    }
    return false;
}

// Unique directory under the system temp dir, removed when the guard dies.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::atomic<unsigned> counter{0};
        auto n = counter.fetch_add(1);
        path = std::filesystem::temp_directory_path() /
               ("diana-test-" + std::to_string(::getpid()) + "-" + std::to_string(n));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Two-site scenario whose full trace is worked out by hand in
// test_simulation.cpp: one user, two well-separated bursts of five equal jobs,
// all data local to site A. Site A wins every placement; jobs run back to back
// on its single processor.
inline std::string golden_scenario_text() {
    return R"({
  "sites": [
    {"id": "A", "capability": 10, "processors": 1},
    {"id": "B", "capability": 20, "processors": 2}
  ],
  "topology": [
    {"src": "A", "dst": "B", "bandwidth": 1e8, "loss_prob": 0.01, "rtt": 0.1},
    {"src": "B", "dst": "A", "bandwidth": 1e8, "loss_prob": 0.01, "rtt": 0.1}
  ],
  "policy": {"num_levels": 3, "base_level": 1, "job_threshold": 8, "time_threshold": 30},
  "workload": {
    "users": 1,
    "bursts_per_user": 2,
    "burst_size": {"kind": "constant", "value": 5},
    "inter_arrival": {"kind": "constant", "value": 50},
    "compute_demand": {"kind": "constant", "value": 20},
    "processors_required": {"kind": "constant", "value": 1},
    "input_bytes": {"kind": "constant", "value": 1000000},
    "data_placement": {"rule": "single_home", "home": "A"}
  },
  "scheduler": "diana",
  "duration": 10000,
  "seed": 7,
  "aging_tick": 7.5,
  "estimate_window": 30
})";
}

}  // namespace testsup
