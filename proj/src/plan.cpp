#include "dcr/plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "dcr/error.hpp"

namespace dcr {

void CostModel::validate() const {
    if (!(e0 >= 0.0) || !(e1 >= 0.0) || !(beta >= 0.0)) {
        throw ValidationError("cost coefficients e0, e1, beta must be >= 0");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ValidationError("server rate mu must be positive and finite");
    }
}

namespace {

const double kInf = std::numeric_limits<double>::infinity();

void validate_floors(const std::vector<double>& floors, const WorkloadTrace& trace) {
    trace.validate();
    if (floors.size() != trace.lambdas.size()) {
        throw ValidationError("floors and trace must have the same number of frames");
    }
    for (std::size_t k = 0; k < floors.size(); ++k) {
        if (!(floors[k] >= 0.0) || !std::isfinite(floors[k])) {
            throw ValidationError("frame " + std::to_string(k) + ": floor must be finite and >= 0");
        }
    }
}

// Costs of a plan that is known to respect its floors (no feasibility check).
PlanCosts accumulate_costs(const std::vector<double>& n, const WorkloadTrace& trace,
                           const CostModel& cost) {
    PlanCosts costs;
    double prev = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        costs.operating += cost.e0 * n[k] + cost.e1 * trace.lambdas[k];
        if (n[k] > prev) {
            costs.switching += cost.beta * (n[k] - prev);
        }
        prev = n[k];
    }
    costs.total = costs.operating + costs.switching;
    return costs;
}

ProvisioningPlan make_plan(std::vector<double> n, const WorkloadTrace& trace,
                           const CostModel& cost) {
    PlanCosts costs = accumulate_costs(n, trace, cost);
    ProvisioningPlan plan;
    plan.n = std::move(n);
    plan.operating_cost = costs.operating;
    plan.switching_cost = costs.switching;
    plan.total_cost = costs.total;
    return plan;
}

// Sorted, deduplicated candidate value set {0} U {m_k} (U uniform grid).
std::vector<double> candidate_values(const std::vector<double>& floors, double grid_step) {
    std::vector<double> values = floors;
    values.push_back(0.0);
    if (grid_step > 0.0) {
        double top = *std::max_element(floors.begin(), floors.end());
        for (double v = grid_step; v < top; v += grid_step) {
            values.push_back(v);
        }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

// One DP frame update over the candidate set. The transition out of value
// V[i] into V[j] costs beta*(V[j]-V[i])+ when charging increases, or
// beta*(V[i]-V[j])+ when charging decreases. Both splits reduce to one
// prefix-min and one suffix-min scan. Ties prefer the smaller index, i.e.
// fewer servers.
struct FrameUpdate {
    std::vector<double> value;   // dp value per candidate
    std::vector<std::int32_t> pred;  // chosen predecessor index per candidate
};

FrameUpdate dp_frame(const std::vector<double>& v, const std::vector<double>& prev, double floor,
                     double e0, double beta, bool charge_increase) {
    const std::size_t count = v.size();
    // Scan A handles transitions from below or equal (i <= j), scan B from
    // above or equal (i >= j). Exactly one of them carries the beta charge.
    std::vector<double> below_val(count), above_val(count);
    std::vector<std::int32_t> below_idx(count), above_idx(count);
    double best = kInf;
    std::int32_t best_i = 0;
    for (std::size_t i = 0; i < count; ++i) {
        double cand = charge_increase ? prev[i] - beta * v[i] : prev[i];
        if (cand < best) {
            best = cand;
            best_i = static_cast<std::int32_t>(i);
        }
        below_val[i] = best;
        below_idx[i] = best_i;
    }
    best = kInf;
    best_i = static_cast<std::int32_t>(count) - 1;
    for (std::size_t ri = count; ri-- > 0;) {
        double cand = charge_increase ? prev[ri] : prev[ri] + beta * v[ri];
        if (cand <= best) {  // <= so ties land on the smaller index
            best = cand;
            best_i = static_cast<std::int32_t>(ri);
        }
        above_val[ri] = best;
        above_idx[ri] = best_i;
    }

    FrameUpdate out;
    out.value.assign(count, kInf);
    out.pred.assign(count, 0);
    std::size_t first = std::lower_bound(v.begin(), v.end(), floor) - v.begin();
    for (std::size_t j = first; j < count; ++j) {
        double from_below = charge_increase ? below_val[j] + beta * v[j] : below_val[j];
        double from_above = charge_increase ? above_val[j] : above_val[j] - beta * v[j];
        // Tie prefers the from-below branch: its predecessor is the smaller value.
        if (from_below <= from_above) {
            out.value[j] = e0 * v[j] + from_below;
            out.pred[j] = below_idx[j];
        } else {
            out.value[j] = e0 * v[j] + from_above;
            out.pred[j] = above_idx[j];
        }
    }
    return out;
}

std::size_t argmin_small(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < values.size(); ++j) {
        if (values[j] < values[best]) {
            best = j;
        }
    }
    return best;
}

std::vector<double> initial_state(const std::vector<double>& v) {
    std::vector<double> state(v.size(), kInf);
    std::size_t zero = std::lower_bound(v.begin(), v.end(), 0.0) - v.begin();
    state[zero] = 0.0;  // n_0 = 0
    return state;
}

}  // namespace

PlanCosts plan_cost(const std::vector<double>& n, const WorkloadTrace& trace,
                    const CostModel& cost) {
    trace.validate();
    cost.validate();
    if (n.size() != trace.lambdas.size()) {
        throw ValidationError("plan and trace must have the same number of frames");
    }
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (!(n[k] >= 0.0) || !std::isfinite(n[k])) {
            throw ValidationError("frame " + std::to_string(k) +
                                  ": server count must be finite and >= 0");
        }
        if (n[k] == 0.0 && trace.lambdas[k] > 0.0) {
            throw ValidationError("frame " + std::to_string(k) +
                                  ": zero servers cannot serve positive load");
        }
    }
    return accumulate_costs(n, trace, cost);
}

ProvisioningPlan offline_optimal(const std::vector<double>& floors, const WorkloadTrace& trace,
                                 const CostModel& cost, double grid_step) {
    validate_floors(floors, trace);
    cost.validate();
    if (grid_step < 0.0) {
        throw ValidationError("grid_step must be >= 0");
    }
    const std::size_t frames = floors.size();
    const std::vector<double> v = candidate_values(floors, grid_step);

    std::vector<double> state = initial_state(v);
    std::vector<std::vector<std::int32_t>> preds(frames);
    for (std::size_t k = 0; k < frames; ++k) {
        FrameUpdate update = dp_frame(v, state, floors[k], cost.e0, cost.beta, true);
        state = std::move(update.value);
        preds[k] = std::move(update.pred);
    }

    std::vector<double> n(frames);
    std::size_t j = argmin_small(state);
    for (std::size_t k = frames; k-- > 0;) {
        n[k] = v[j];
        j = static_cast<std::size_t>(preds[k][j]);
    }
    return make_plan(std::move(n), trace, cost);
}

ProvisioningPlan optimal_static(const std::vector<double>& floors, const WorkloadTrace& trace,
                                const CostModel& cost) {
    validate_floors(floors, trace);
    cost.validate();
    double top = *std::max_element(floors.begin(), floors.end());
    return make_plan(std::vector<double>(floors.size(), top), trace, cost);
}

namespace {

// Forward pass shared by lcp_frame_bounds and run_lcp: advances the
// increase-charged and decrease-charged DPs one frame at a time and reads the
// current argmin of each as (nL_k, nU_k).
class LcpBoundsPass {
public:
    LcpBoundsPass(const std::vector<double>& floors, const CostModel& cost)
        : v_(candidate_values(floors, 0.0)),
          floors_(floors),
          cost_(cost),
          state_low_(initial_state(v_)),
          state_high_(initial_state(v_)) {}

    // Advance to frame k (0-based) and return its bounds.
    std::pair<double, double> step(std::size_t k) {
        FrameUpdate low = dp_frame(v_, state_low_, floors_[k], cost_.e0, cost_.beta, true);
        FrameUpdate high = dp_frame(v_, state_high_, floors_[k], cost_.e0, cost_.beta, false);
        state_low_ = std::move(low.value);
        state_high_ = std::move(high.value);
        return {v_[argmin_small(state_low_)], v_[argmin_small(state_high_)]};
    }

private:
    std::vector<double> v_;
    const std::vector<double>& floors_;
    const CostModel& cost_;
    std::vector<double> state_low_;
    std::vector<double> state_high_;
};

}  // namespace

std::pair<double, double> lcp_frame_bounds(const std::vector<double>& floors,
                                           const WorkloadTrace& trace, const CostModel& cost,
                                           std::size_t k) {
    validate_floors(floors, trace);
    cost.validate();
    if (k < 1 || k > floors.size()) {
        throw ValidationError("frame index must lie in 1..K");
    }
    LcpBoundsPass pass(floors, cost);
    std::pair<double, double> bounds{0.0, 0.0};
    for (std::size_t frame = 0; frame < k; ++frame) {
        bounds = pass.step(frame);
    }
    return bounds;
}

LcpRun run_lcp_detailed(const std::vector<double>& floors, const WorkloadTrace& trace,
                        const CostModel& cost) {
    validate_floors(floors, trace);
    cost.validate();
    const std::size_t frames = floors.size();
    LcpBoundsPass pass(floors, cost);
    LcpRun run;
    run.lower.resize(frames);
    run.upper.resize(frames);
    std::vector<double> n(frames);
    double current = 0.0;  // n_0 = 0
    for (std::size_t k = 0; k < frames; ++k) {
        auto [lower, upper] = pass.step(k);
        run.lower[k] = lower;
        run.upper[k] = upper;
        current = project(current, lower, upper);
        n[k] = current;
    }
    run.plan = make_plan(std::move(n), trace, cost);
    return run;
}

ProvisioningPlan run_lcp(const std::vector<double>& floors, const WorkloadTrace& trace,
                         const CostModel& cost) {
    return run_lcp_detailed(floors, trace, cost).plan;
}

}  // namespace dcr
