// Slot-level virtual-server simulation, used to validate the analytical
// delay bounds and the server-aggregation property empirically.
//
// Fluid model: the work a_t arrives at the start of slot t and the server
// drains continuously at rate c. The backlog follows the standard recursion
// B_t = max(B_{t-1} + a_t - c, 0) with B_0 = 0, and the recorded virtual
// delay is that of the last work unit still queued at the slot boundary,
//   D_t = B_t / c  (slots).
// Sub-slot delay resolution matters here because the delay bounds of
// interest (e.g. 0.2 slots) are below slot granularity; an integer-slot
// delay definition would make them vacuous. Under within-slot fluid
// arrivals, B_t / c is the steady-state virtual waiting time seen at the
// slot boundary — the quantity the exponential/polynomial delay bounds
// control.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcr/arrival.hpp"

namespace dcr {

struct VirtualQueueRun {
    std::vector<double> backlog;  // B_t, jobs
    std::vector<double> delay;    // D_t, slots
    double service_rate = 0.0;    // c, jobs/slot
    std::string model;            // tag of the source trace's family
    std::uint64_t seed = 0;       // seed of the source trace
};

VirtualQueueRun simulate_delays(const SlotTrace& trace, double c);

// Fraction of slots after the warm-up with D_t > delay_bound. The plain
// definition uses warmup_slots = 0 (the whole run counts); stationarity
// studies exclude a warm-up prefix, conventionally 1000 slots.
double empirical_violation(const VirtualQueueRun& run, double delay_bound,
                           long long warmup_slots = 0);

struct SplitReport {
    double max_discrepancy = 0.0;  // max |per-server delay - aggregate delay| over all slots
    long long slots = 0;
};

// Feed each of n identical servers (rate mu) a 1/n share of every arrival,
// versus one virtual server at rate n*mu fed everything; the per-slot delay
// paths should coincide up to floating-point noise.
SplitReport split_equivalence_check(const SlotTrace& trace, long long n, double mu);

// Optional CSV dump of (slot, backlog, delay) triples for external plotting.
void save_queue_run(const VirtualQueueRun& run, const std::string& path);

}  // namespace dcr
