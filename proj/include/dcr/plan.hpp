// Slow time-scale provisioning: per-frame server counts subject to capacity
// floors, under an affine per-server operating cost f(x) = e0 + e1*x and a
// switching cost beta charged on every server turned on.
//
// Because f is affine, a frame's operating cost is e0*n_k + e1*lambda_k: the
// e1 term is plan-independent, and an optimal plan only ever takes values in
// {0} union {m_1..m_K}. The offline optimum is found by dynamic programming
// over that candidate set with prefix/suffix-min scans per frame, so each
// frame costs O(|V|) after sorting. Ties are broken toward fewer servers,
// which keeps every solver deterministic.
//
// The online LCP rule clamps the previous count into [nL_k, nU_k], where the
// bounds come from the prefix problems charging the switching cost on
// increases (nL) and on decreases (nU), both solved by the same DP.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dcr/trace.hpp"

namespace dcr {

struct CostModel {
    double e0 = 1.0;    // energy cost per active server per frame
    double e1 = 0.0;    // energy cost per unit arrival rate
    double beta = 6.0;  // switching cost per server turned on
    double mu = 1.0;    // server service rate, jobs/slot

    void validate() const;  // e0,e1,beta >= 0; mu > 0
};

struct PlanCosts {
    double operating = 0.0;
    double switching = 0.0;
    double total = 0.0;
};

struct ProvisioningPlan {
    std::vector<double> n;  // per-frame server counts (real-valued), length K
    double operating_cost = 0.0;
    double switching_cost = 0.0;
    double total_cost = 0.0;
};

// Clamp n into [lo, hi] (the LCP projection).
inline double project(double n, double lo, double hi) {
    return n > hi ? hi : (n < lo ? lo : n);
}

// Cost of an explicit plan. ValidationError if lengths mismatch, any n_k is
// negative, or a frame with positive load has zero servers.
PlanCosts plan_cost(const std::vector<double>& n, const WorkloadTrace& trace,
                    const CostModel& cost);

// Minimize total cost over n_k >= m_k with n_0 = 0. grid_step == 0 (default)
// uses the exact candidate set {0, m_1..m_K}, which is optimal for the affine
// cost; a positive grid_step additionally seeds a uniform value grid from 0
// to the largest floor (refinement hook for non-affine extensions).
ProvisioningPlan offline_optimal(const std::vector<double>& floors, const WorkloadTrace& trace,
                                 const CostModel& cost, double grid_step = 0.0);

// Best constant plan with hindsight: n_k = max_k m_k for the affine cost.
ProvisioningPlan optimal_static(const std::vector<double>& floors, const WorkloadTrace& trace,
                                const CostModel& cost);

// LCP bounds for frame k (1-based): the k-th component of the prefix problem
// charging beta on increases (first) and on decreases (second).
std::pair<double, double> lcp_frame_bounds(const std::vector<double>& floors,
                                           const WorkloadTrace& trace, const CostModel& cost,
                                           std::size_t k);

struct LcpRun {
    ProvisioningPlan plan;
    std::vector<double> lower;  // nL_k per frame
    std::vector<double> upper;  // nU_k per frame
};

// Forward LCP recurrence: n_k = project(n_{k-1}, nL_k, nU_k), n_0 = 0.
// The detailed variant also returns the per-frame bounds.
LcpRun run_lcp_detailed(const std::vector<double>& floors, const WorkloadTrace& trace,
                        const CostModel& cost);
ProvisioningPlan run_lcp(const std::vector<double>& floors, const WorkloadTrace& trace,
                         const CostModel& cost);

}  // namespace dcr
