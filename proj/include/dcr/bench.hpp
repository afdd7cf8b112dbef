// Experiment harness: crosses a workload trace with arrival-family, SLA,
// switching-cost and peak-to-mean sweeps, runs the full provisioning pipeline
// (capacity floors -> static / offline-optimal / LCP plans) at every sweep
// point, and emits tidy CSV plus a JSON manifest. No plotting here — outputs
// are meant to be diffed and consumed by external tools.
//
// Every sweep point is pure and independent, so points run on a bounded
// worker pool; rows are always emitted in sweep-coordinate order, making
// repeated runs byte-identical.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcr/capacity.hpp"
#include "dcr/plan.hpp"
#include "dcr/trace.hpp"

namespace dcr {

struct SynthSpec {
    long long frames = 288;
    double mean_rate = 0.0;
    double pmr = 1.0;
    int periods = 1;
    std::uint64_t seed = 42;
};

struct TraceSource {
    bool is_synth = true;
    SynthSpec synth;
    std::string file;  // used when is_synth == false
    long long frame_slots = 600;
    double slot_seconds = 1.0;
};

struct ExperimentConfig {
    TraceSource trace;
    Family family = Family::pareto;
    std::vector<double> alphas{1.5};           // pareto tail-index sweep
    std::vector<double> t_slots{6.0};          // mm cycle-time sweep
    double low_frac = 0.5;                     // mm lambda_l = low_frac * mean
    double high_frac = 2.0;                    // mm lambda_h = high_frac * mean
    std::vector<double> delay_bounds_seconds{0.2};
    std::vector<double> violation_probs{1e-3};
    std::vector<double> betas{6.0};
    std::vector<double> gammas{1.0};           // PMR rescale exponents
    double e0 = 1.0;
    double e1 = 0.0;
    double mu = 1.0;
    int workers = 0;                           // 0 = all logical cores
    std::string out_dir;                       // empty = do not write files
    double target_savings = 0.2;               // threshold-map default target

    void validate() const;
    // The family's parameter sweep: alphas, t_slots, or {0} for Poisson.
    std::vector<double> family_values() const;
};

// Parse a config from a JSON file / JSON text (see configs/ for the schema).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text);

// Materialize the configured trace (synthesize or load).
WorkloadTrace build_trace(const TraceSource& source);

struct SweepRow {
    std::string family;
    double param = 0.0;          // alpha or T (0 for Poisson)
    double gamma = 0.0;
    double pmr = 0.0;            // PMR of the rescaled trace
    double delay_bound_seconds = 0.0;
    double violation_prob = 0.0;
    double beta = 0.0;
    double cost_static = 0.0;
    double cost_optimal = 0.0;
    double cost_lcp = 0.0;
    double savings_optimal = 0.0;
    double savings_lcp = 0.0;
    double lcp_relative = 0.0;   // savings_lcp / savings_optimal (1 when both are 0)
    std::string error;           // non-empty marks a failed point; numeric fields unset
};

struct SweepResult {
    std::vector<SweepRow> rows;
    long long trace_frames = 0;
    double trace_mean = 0.0;
    double trace_pmr = 0.0;
};

// Run the full cross product; if config.out_dir is non-empty, also write
// sweep.csv and sweep_manifest.json there. Point-level solver failures are
// recorded in the row's error field and never abort the sweep.
SweepResult run_sweep(const ExperimentConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string sweep_manifest_json(const SweepResult& result, const ExperimentConfig& config);

struct ThresholdCell {
    std::string family;
    double param = 0.0;                // alpha or T
    double delay_bound_seconds = 0.0;
    double violation_prob = 0.0;
    double beta = 0.0;
    double threshold_pmr = 0.0;        // minimal PMR achieving the target (when status == "ok")
    double achieved_savings = 0.0;     // savings at the returned PMR
    std::string status;                // "ok" | "unreachable" | "non-monotone" | "error: ..."
};

struct ThresholdMap {
    std::vector<ThresholdCell> cells;
    double target_savings = 0.0;
};

// For each burstiness value x each (beta, eps) pair: the minimal trace PMR
// (found by bisecting the rescale exponent over [0.02, 2]) whose offline-
// optimal savings reach target_savings, to a PMR tolerance of 0.01. The
// savings-vs-PMR monotonicity the bisection relies on is spot-checked first;
// non-monotone cells are flagged rather than answered. Writes threshold.csv
// and threshold_manifest.json when config.out_dir is set.
ThresholdMap threshold_map(const ExperimentConfig& config, double target_savings);

std::string threshold_csv(const ThresholdMap& map);
std::string threshold_manifest_json(const ThresholdMap& map, const ExperimentConfig& config);

// Cost-savings fraction (cost_static - cost_dynamic) / cost_static, in [0,1).
// A dynamic cost exceeding the static cost beyond 1e-9 signals a solver bug
// and raises ValidationError.
double savings(double cost_dynamic, double cost_static);

}  // namespace dcr
