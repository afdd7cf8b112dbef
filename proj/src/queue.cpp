#include "dcr/queue.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dcr/error.hpp"
#include "dcr/text.hpp"

namespace dcr {

VirtualQueueRun simulate_delays(const SlotTrace& trace, double c) {
    if (trace.arrivals.empty()) {
        throw ValidationError("simulate_delays needs a non-empty slot trace");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ValidationError("service rate must be positive and finite");
    }
    for (double a : trace.arrivals) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw ValidationError("slot arrivals must be non-negative and finite");
        }
    }
    VirtualQueueRun run;
    run.service_rate = c;
    run.model = trace.model;
    run.seed = trace.seed;
    run.backlog.resize(trace.arrivals.size());
    run.delay.resize(trace.arrivals.size());
    double b = 0.0;
    for (std::size_t t = 0; t < trace.arrivals.size(); ++t) {
        b = std::max(b + trace.arrivals[t] - c, 0.0);
        run.backlog[t] = b;
        run.delay[t] = b / c;
    }
    return run;
}

double empirical_violation(const VirtualQueueRun& run, double delay_bound,
                           long long warmup_slots) {
    if (run.delay.empty()) {
        throw ValidationError("empirical_violation needs a non-empty run");
    }
    if (!(delay_bound >= 0.0) || !std::isfinite(delay_bound)) {
        throw ValidationError("delay bound must be non-negative and finite");
    }
    if (warmup_slots < 0 || static_cast<std::size_t>(warmup_slots) >= run.delay.size()) {
        throw ValidationError("warm-up must leave at least one counted slot");
    }
    std::size_t counted = run.delay.size() - static_cast<std::size_t>(warmup_slots);
    std::size_t violations = 0;
    for (std::size_t t = static_cast<std::size_t>(warmup_slots); t < run.delay.size(); ++t) {
        if (run.delay[t] > delay_bound) {
            ++violations;
        }
    }
    return static_cast<double>(violations) / static_cast<double>(counted);
}

SplitReport split_equivalence_check(const SlotTrace& trace, long long n, double mu) {
    if (n < 1) {
        throw ValidationError("split check needs n >= 1 servers");
    }
    if (!(mu > 0.0)) {
        throw ValidationError("split check needs a positive per-server rate");
    }
    SlotTrace split = trace;
    double inv_n = 1.0 / static_cast<double>(n);
    for (double& a : split.arrivals) {
        a *= inv_n;
    }
    VirtualQueueRun per_server = simulate_delays(split, mu);
    VirtualQueueRun aggregate = simulate_delays(trace, static_cast<double>(n) * mu);
    SplitReport report;
    report.slots = static_cast<long long>(trace.arrivals.size());
    for (std::size_t t = 0; t < trace.arrivals.size(); ++t) {
        report.max_discrepancy = std::max(
            report.max_discrepancy, std::fabs(per_server.delay[t] - aggregate.delay[t]));
    }
    return report;
}

void save_queue_run(const VirtualQueueRun& run, const std::string& path) {
    if (run.delay.empty()) {
        throw ValidationError("cannot save an empty queue run");
    }
    std::ostringstream out;
    out << "slot;backlog;delay\n";
    for (std::size_t t = 0; t < run.delay.size(); ++t) {
        out << t << ';' << format_double(run.backlog[t]) << ';' << format_double(run.delay[t])
            << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ValidationError("cannot write queue run file: " + path);
    }
    file << out.str();
    if (!file) {
        throw ValidationError("write failed for queue run file: " + path);
    }
}

}  // namespace dcr
