#pragma once

#include "diana/event_log.hpp"
#include "diana/scenario.hpp"

namespace diana {

// Wall-clock seconds the job occupies its processors: demand / capability.
double job_service_time(const Job& job, const SiteState& site);

struct TransferPlan {
    double inbound = 0.0;   // input + executable staging, before execution
    double outbound = 0.0;  // output delivery, after execution
};

TransferPlan transfer_phase(const Job& job, const SiteId& placement, const Topology& topo);

// Deterministic discrete-event run of a scenario: identical scenarios produce
// identical logs, event for event. Throws a validation error listing every
// violation if the scenario is malformed.
EventLog run(const Scenario& scenario);

}  // namespace diana
