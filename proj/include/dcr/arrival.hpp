// Fast time-scale arrival-process families and slot-level sample paths.
//
// Three families cover the workload spectrum studied here:
//   Poisson        — independent integer counts per slot (light-tailed).
//   MarkovModulated— a two-state chain emitting rate lambda_l or lambda_h per
//                    slot; burstiness is set by the mean cycle time
//                    T = 1/p_h + 1/p_l (slots). p_h is the per-slot chance of
//                    jumping low->high, p_l of jumping high->low.
//   Pareto         — i.i.d. heavy-tailed job sizes, tail (x/b)^(-alpha) with
//                    1 < alpha < 2 (finite mean, infinite variance).
//
// MM and Pareto emit fluid (real-valued) work per slot; Poisson emits integer
// counts. The MM chain starts from its stationary distribution so sample
// paths are stationary from the first slot.
//
// Note on degenerate MM models: lambda_l == lambda_h is accepted by the type
// (a constant-rate source) because capacity solvers use it as a limit check;
// mm_from_burst_param, which solves for the transition probabilities, still
// requires lambda_l < mean < lambda_h strictly.
#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace dcr {

struct PoissonModel {
    double rate = 0.0;  // jobs/slot
};

struct MMModel {
    double lambda_l = 0.0;  // low-state rate, jobs/slot
    double lambda_h = 0.0;  // high-state rate, jobs/slot
    double p_h = 0.0;       // P(low -> high) per slot
    double p_l = 0.0;       // P(high -> low) per slot
};

struct ParetoModel {
    double alpha = 0.0;  // tail index, 1 < alpha < 2
    double b = 0.0;      // scale (minimum job size), jobs/slot
};

using ArrivalModel = std::variant<PoissonModel, MMModel, ParetoModel>;

void validate(const PoissonModel& model);
void validate(const MMModel& model);
void validate(const ParetoModel& model);
void validate(const ArrivalModel& model);

// Stationary mean arrival rate of the model, jobs/slot.
double model_mean(const PoissonModel& model);
double model_mean(const MMModel& model);
double model_mean(const ParetoModel& model);
double model_mean(const ArrivalModel& model);

// Stationary probability of the high state, p_h / (p_h + p_l).
double mm_stationary_high(const MMModel& model);

// "poisson", "mm" or "pareto".
std::string model_tag(const ArrivalModel& model);

struct SlotTrace {
    std::vector<double> arrivals;  // a_t >= 0, jobs per slot
    std::string model;             // tag of the generating family
    std::uint64_t seed = 0;
};

// Solve for the MM transition probabilities that hit a target stationary mean
// and cycle time T (slots). Throws InfeasibleCycleError (with the minimal
// feasible T) when either probability would leave (0,1].
MMModel mm_from_burst_param(double mean, double lambda_l, double lambda_h, double t_slots);

// Pareto scale matching a target mean: b = mean*(alpha-1)/alpha.
ParetoModel pareto_from_mean(double mean, double alpha);

// Deterministic sample path of num_slots arrivals for (model, seed).
SlotTrace sample_slots(const ArrivalModel& model, long long num_slots, std::uint64_t seed);

// CSV export: header "slot;arrival", rows "<index>;<amount>", '\n' endings.
void save_slot_trace(const SlotTrace& trace, const std::string& path);

}  // namespace dcr
