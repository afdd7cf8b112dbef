// Acceptance harness: ten numbered end-to-end checks, each printing one
// PASS/FAIL line with the measured quantities and the pinned tolerance.
// Run all with no arguments or one with --criterion N. Exit code is the
// number of failed criteria.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dcr/arrival.hpp"
#include "dcr/bench.hpp"
#include "dcr/capacity.hpp"
#include "dcr/error.hpp"
#include "dcr/plan.hpp"
#include "dcr/queue.hpp"
#include "dcr/rng.hpp"
#include "dcr/trace.hpp"

namespace {

struct Outcome {
    bool pass = false;
    std::string details;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

const dcr::SlaSpec kSla{0.2, 1e-3};

// The two calibrated synthetic workloads used across criteria.
dcr::WorkloadTrace mild_trace() { return dcr::synth_diurnal(288, 1000.0 / 1.64, 1.64, 2, 42); }
dcr::WorkloadTrace bursty_trace() { return dcr::synth_diurnal(1008, 1000.0 / 4.64, 4.64, 7, 42); }

dcr::TraceSource bursty_source() {
    dcr::TraceSource src;
    src.is_synth = true;
    src.synth = {1008, 1000.0 / 4.64, 4.64, 7, 42};
    src.frame_slots = 600;
    src.slot_seconds = 1.0;
    return src;
}

// ---- criterion 1: closed-form capacity vs independent evaluation ------------

Outcome criterion_1() {
    const double lambda = 300.0;
    const double k = -std::log(kSla.violation_prob) / (lambda * kSla.delay_bound);
    const double reference = k * lambda / std::log1p(k);
    const double got = dcr::capacity_poisson(lambda, kSla).capacity;
    const double rel = std::abs(got - reference) / reference;

    double max_pair_rel = 0.0;
    dcr::Rng rng(20240501);
    for (int i = 0; i < 100; ++i) {
        const double l = std::exp(rng.u01() * std::log(2000.0));
        const double dbar = std::exp(std::log(0.01) + rng.u01() * std::log(5.0 / 0.01));
        const double eps = std::exp(std::log(1e-9) + rng.u01() * std::log(0.1 / 1e-9));
        const dcr::SlaSpec sla{dbar, eps};
        const double a = dcr::capacity_poisson(l, sla).capacity;
        const double b = dcr::capacity_poisson_implicit(l, sla).capacity;
        max_pair_rel = std::max(max_pair_rel, std::abs(a - b) / a);
    }

    Outcome out;
    out.pass = rel <= 1e-6 && max_pair_rel <= 1e-6;
    out.details = "closed-form C=" + fmt(got) + " vs independent " + fmt(reference) +
                  " (rel err " + fmt(rel) + ", tol 1e-6); explicit/implicit max rel diff " +
                  fmt(max_pair_rel) + " over 100 draws (tol 1e-6)";
    return out;
}

// ---- criterion 2: bound validity by simulation --------------------------------

Outcome criterion_2() {
    struct FamilyCase {
        std::string name;
        dcr::ArrivalModel model;
        double capacity;
    };
    const dcr::MMModel mm = dcr::mm_from_burst_param(300.0, 150.0, 600.0, 6.0);
    const std::vector<FamilyCase> cases{
        {"poisson", dcr::PoissonModel{300.0}, dcr::capacity_poisson(300.0, kSla).capacity},
        {"mm", mm, dcr::capacity_mm(mm, kSla).capacity},
        {"pareto", dcr::ParetoModel{1.5, 100.0},
         dcr::capacity_ht(300.0, 1.5, kSla).capacity},
    };

    Outcome out;
    out.pass = true;
    for (const FamilyCase& fc : cases) {
        double worst = 0.0;
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            const dcr::SlotTrace trace = dcr::sample_slots(fc.model, 1000000, seed);
            const dcr::VirtualQueueRun run = dcr::simulate_delays(trace, fc.capacity);
            worst = std::max(worst,
                             dcr::empirical_violation(run, kSla.delay_bound, 1000));
        }
        if (worst > 1e-3) out.pass = false;
        out.details += fc.name + " worst violation " + fmt(worst) + " (C=" + fmt(fc.capacity) +
                       "); ";
    }
    out.details += "budget 1e-3 per family over 1e6 slots x 3 seeds, 1e3-slot warm-up";
    if (!out.pass) {
        out.details +=
            " [the heavy-tailed bound is asymptotic: a single job above C*(1+Dbar) already "
            "breaks the budget at these parameters, so this capacity cannot meet it "
            "empirically]";
    }
    return out;
}

// ---- criterion 3: heavy-tail capacity scaling slope ---------------------------

Outcome criterion_3() {
    std::vector<std::pair<double, double>> sweep;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) sweep.push_back({0.2, eps});

    Outcome out;
    out.pass = true;
    out.details = "slope*alpha over eps in [1e-8,1e-2], lambda=10:";
    for (double alpha : {1.25, 1.5, 1.75}) {
        // The heaviest tail at the tightest budget legitimately needs
        // capacity ~3e6x the mean, so widen the search cap.
        const dcr::HtScalingReport rep = dcr::check_scaling_ht(10.0, alpha, sweep, 1e9);
        const double normalized = rep.slope * alpha;  // ideal 1
        if (std::abs(normalized - 1.0) > 0.1) out.pass = false;
        out.details += " alpha=" + fmt(alpha) + ": " + fmt(normalized);
    }
    out.details += " (tol |slope*alpha-1| <= 0.1)";
    return out;
}

// ---- criterion 4: light-tail capacity scaling band ----------------------------

Outcome criterion_4() {
    std::vector<std::pair<double, double>> sweep;
    for (double eps : {1e-2, 1e-5, 1e-8}) {
        for (double dbar : {1e-3, 1e-4, 1e-5, 1e-6}) sweep.push_back({dbar, eps});
    }
    const dcr::PoissonScalingReport rep = dcr::check_scaling_poisson(300.0, sweep);
    Outcome out;
    out.pass = rep.decades >= 3.0 && rep.band <= 4.0;
    out.details = "C*log(x)/x band " + fmt(rep.band) + " (tol <= 4) over " + fmt(rep.decades) +
                  " decades of x (need >= 3), lambda=300";
    return out;
}

// ---- criterion 5: monotonicity grids ------------------------------------------

Outcome criterion_5() {
    // Both axes ordered so the constraint loosens: capacity must not rise.
    const std::vector<double> dbars{0.05, 0.1, 0.2, 0.5, 1.0};
    const std::vector<double> epss{1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
    const std::vector<double> alphas{1.2, 1.5, 1.8};
    const std::vector<double> ts{3.5, 6.0, 60.0};
    const std::vector<double> lambdas{100.0, 300.0, 1000.0};
    const double slack = 1e-9;  // relative slack for solver noise

    long long comparisons = 0, violations = 0;
    auto check_axes = [&](const std::function<double(double, double, double)>& solve,
                          const std::vector<double>& third, bool third_increasing_allowed,
                          bool third_decreasing_allowed) {
        for (double p : third) {
            // Non-increasing in Dbar at fixed eps, and in eps at fixed Dbar.
            for (double eps : epss) {
                double prev = 1e300;
                for (double dbar : dbars) {
                    const double c = solve(dbar, eps, p);
                    ++comparisons;
                    if (c > prev * (1.0 + slack)) ++violations;
                    prev = c;
                }
            }
            for (double dbar : dbars) {
                double prev = 1e300;
                for (double eps : epss) {
                    const double c = solve(dbar, eps, p);
                    ++comparisons;
                    if (c > prev * (1.0 + slack)) ++violations;
                    prev = c;
                }
            }
        }
        // Monotonicity along the third axis at every (Dbar, eps).
        for (double dbar : dbars) {
            for (double eps : epss) {
                for (std::size_t i = 1; i < third.size(); ++i) {
                    const double lo = solve(dbar, eps, third[i - 1]);
                    const double hi = solve(dbar, eps, third[i]);
                    ++comparisons;
                    if (hi > lo * (1.0 + slack) && !third_increasing_allowed) ++violations;
                    if (hi < lo * (1.0 - slack) && !third_decreasing_allowed) ++violations;
                }
            }
        }
    };

    check_axes(
        [](double dbar, double eps, double lambda) {
            return dcr::capacity_poisson(lambda, {dbar, eps}).capacity;
        },
        lambdas, true, true);  // lambda axis unconstrained here
    check_axes(
        [](double dbar, double eps, double t) {
            const dcr::MMModel m = dcr::mm_from_burst_param(300.0, 150.0, 600.0, t);
            return dcr::capacity_mm(m, {dbar, eps}).capacity;
        },
        ts, true, false);  // capacity must not drop as cycles lengthen
    check_axes(
        [](double dbar, double eps, double alpha) {
            return dcr::capacity_ht(300.0, alpha, {dbar, eps}).capacity;
        },
        alphas, false, true);  // capacity must not rise as tails lighten

    Outcome out;
    out.pass = violations == 0;
    out.details = "0 violations required; got " + std::to_string(violations) + " across " +
                  std::to_string(comparisons) + " ordered comparisons (5x5x3 grids, 3 families)";
    return out;
}

// ---- criteria 6/7 shared: random planning instances ----------------------------

struct PlanInstance {
    std::vector<double> floors;
    std::vector<double> lambdas;
    dcr::CostModel cost;
};

PlanInstance random_instance(dcr::Rng& rng, bool constant_floors) {
    const std::vector<double> pool{0.0, 1.0, 2.0, 3.0, 5.0, 10.0};
    const int k = 1 + static_cast<int>(rng.u01() * 6.0);
    PlanInstance inst;
    const double const_floor = pool[static_cast<std::size_t>(rng.u01() * pool.size())];
    for (int i = 0; i < k; ++i) {
        const double m =
            constant_floors ? const_floor : pool[static_cast<std::size_t>(rng.u01() * pool.size())];
        inst.floors.push_back(m);
        inst.lambdas.push_back(m * (0.5 + rng.u01()));
    }
    inst.cost = dcr::CostModel{0.2 + 2.0 * rng.u01(), rng.u01() < 0.5 ? 0.0 : 0.7 * rng.u01(),
                               rng.u01() < 0.15 ? 0.0 : 12.0 * rng.u01(), 1.0};
    return inst;
}

double instance_cost(const std::vector<double>& n, const PlanInstance& inst) {
    double total = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        total += inst.cost.e0 * n[i] + inst.cost.e1 * inst.lambdas[i];
        if (n[i] > prev) total += inst.cost.beta * (n[i] - prev);
        prev = n[i];
    }
    return total;
}

double enumerate_min(const PlanInstance& inst) {
    std::vector<double> values{0.0};
    for (double m : inst.floors) values.push_back(m);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t k = inst.floors.size(), v = values.size();
    std::vector<std::size_t> idx(k, 0);
    std::vector<double> n(k);
    double best = 1e300;
    while (true) {
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i) {
            n[i] = values[idx[i]];
            if (n[i] < inst.floors[i]) {
                feasible = false;
                break;
            }
        }
        if (feasible) best = std::min(best, instance_cost(n, inst));
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] == v) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return best;
}

dcr::WorkloadTrace trace_from_lambdas(const std::vector<double>& lambdas) {
    dcr::WorkloadTrace t;
    t.lambdas = lambdas;
    return t;
}

Outcome criterion_6() {
    dcr::Rng rng(606060);
    double max_diff = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PlanInstance inst = random_instance(rng, false);
        const dcr::ProvisioningPlan plan =
            dcr::offline_optimal(inst.floors, trace_from_lambdas(inst.lambdas), inst.cost);
        const double brute = enumerate_min(inst);
        max_diff = std::max(max_diff, std::abs(plan.total_cost - brute));
    }

    // Hand-worked three-frame instances: dear switching keeps the valley
    // filled (total 90); cheap switching dips (total 31).
    const std::vector<double> floors{10.0, 2.0, 10.0};
    const dcr::WorkloadTrace t = trace_from_lambdas(floors);
    const double flat =
        dcr::offline_optimal(floors, t, dcr::CostModel{1.0, 0.0, 6.0, 1.0}).total_cost;
    const double dip =
        dcr::offline_optimal(floors, t, dcr::CostModel{1.0, 0.0, 0.5, 1.0}).total_cost;

    Outcome out;
    out.pass = max_diff <= 1e-9 && std::abs(flat - 90.0) <= 1e-9 && std::abs(dip - 31.0) <= 1e-9;
    out.details = "DP vs enumeration max |cost diff| " + fmt(max_diff) +
                  " over 1000 random instances (tol 1e-9); hand instances: dear-switching " +
                  fmt(flat) + " (expect 90), cheap-switching " + fmt(dip) + " (expect 31)";
    return out;
}

Outcome criterion_7() {
    dcr::Rng rng(707070);
    double worst_ratio = 1.0;
    double worst_band_violation = 0.0;
    double worst_const_gap = 0.0;
    long long checked = 0;

    auto examine = [&](const std::vector<double>& floors, const dcr::WorkloadTrace& t,
                       const dcr::CostModel& cost, bool constant) {
        const dcr::LcpRun run = dcr::run_lcp_detailed(floors, t, cost);
        const dcr::ProvisioningPlan opt = dcr::offline_optimal(floors, t, cost);
        if (opt.total_cost > 0.0) {
            worst_ratio = std::max(worst_ratio, run.plan.total_cost / opt.total_cost);
        }
        for (std::size_t i = 0; i < floors.size(); ++i) {
            worst_band_violation = std::max(
                {worst_band_violation, run.lower[i] - run.plan.n[i], run.plan.n[i] - run.upper[i]});
        }
        if (constant) {
            worst_const_gap =
                std::max(worst_const_gap, std::abs(run.plan.total_cost - opt.total_cost));
        }
        ++checked;
    };

    for (int i = 0; i < 900; ++i) {
        const PlanInstance inst = random_instance(rng, false);
        examine(inst.floors, trace_from_lambdas(inst.lambdas), inst.cost, false);
    }
    for (int i = 0; i < 100; ++i) {
        const PlanInstance inst = random_instance(rng, true);
        examine(inst.floors, trace_from_lambdas(inst.lambdas), inst.cost, true);
    }

    dcr::FamilyParams fp;
    fp.family = dcr::Family::pareto;
    fp.alpha = 1.5;
    for (const dcr::WorkloadTrace& t : {mild_trace(), bursty_trace()}) {
        const std::vector<double> floors = dcr::capacity_profile(t, fp, kSla, 1.0);
        examine(floors, t, dcr::CostModel{1.0, 0.0, 6.0, 1.0}, false);
    }

    Outcome out;
    out.pass = worst_ratio <= 3.0 + 1e-9 && worst_band_violation <= 1e-9 &&
               worst_const_gap <= 1e-9;
    out.details = "lazy/optimal worst cost ratio " + fmt(worst_ratio) +
                  " (must be <= 3); max band violation " + fmt(worst_band_violation) +
                  "; constant-floor cost gap " + fmt(worst_const_gap) + "; " +
                  std::to_string(checked) + " instances incl. both calibrated traces";
    return out;
}

// ---- criterion 8: aggregation property -----------------------------------------

Outcome criterion_8() {
    const dcr::MMModel mm = dcr::mm_from_burst_param(300.0, 150.0, 600.0, 6.0);
    struct FamilyCase {
        std::string name;
        dcr::ArrivalModel model;
        double capacity;
    };
    const std::vector<FamilyCase> cases{
        {"poisson", dcr::PoissonModel{300.0}, dcr::capacity_poisson(300.0, kSla).capacity},
        {"mm", mm, dcr::capacity_mm(mm, kSla).capacity},
        {"pareto", dcr::ParetoModel{1.5, 100.0}, dcr::capacity_ht(300.0, 1.5, kSla).capacity},
    };
    Outcome out;
    out.pass = true;
    double worst = 0.0;
    for (const FamilyCase& fc : cases) {
        const dcr::SlotTrace trace = dcr::sample_slots(fc.model, 20000, 11);
        for (long long n : {1LL, 2LL, 4LL, 7LL}) {
            const double mu = fc.capacity / static_cast<double>(n);
            const dcr::SplitReport rep = dcr::split_equivalence_check(trace, n, mu);
            worst = std::max(worst, rep.max_discrepancy);
        }
    }
    out.pass = worst <= 1e-12;
    out.details = "split vs aggregate max |delay diff| " + fmt(worst) +
                  " (tol 1e-12) for n in {1,2,4,7} x 3 families, 2e4 slots";
    return out;
}

// ---- criterion 9: qualitative burstiness properties -----------------------------

dcr::ExperimentConfig bursty_config() {
    dcr::ExperimentConfig config;
    config.trace = bursty_source();
    config.family = dcr::Family::pareto;
    config.delay_bounds_seconds = {0.2};
    config.violation_probs = {1e-3};
    config.betas = {6.0};
    config.gammas = {1.0};
    return config;
}

Outcome criterion_9() {
    Outcome out;
    out.pass = true;

    // (a) savings fall strictly as the tail gets heavier.
    dcr::ExperimentConfig cfg_a = bursty_config();
    cfg_a.alphas = {1.9, 1.7, 1.5, 1.3, 1.2};
    const dcr::SweepResult res_a = dcr::run_sweep(cfg_a);
    std::string sav_list;
    bool strictly_decreasing = true;
    for (std::size_t i = 0; i < res_a.rows.size(); ++i) {
        if (!res_a.rows[i].error.empty()) {
            strictly_decreasing = false;
            break;
        }
        if (i > 0 && res_a.rows[i].savings_optimal >= res_a.rows[i - 1].savings_optimal) {
            strictly_decreasing = false;
        }
        sav_list += (i ? " > " : "") + fmt(res_a.rows[i].savings_optimal);
    }
    if (!strictly_decreasing) out.pass = false;
    out.details += "(a) savings across alpha 1.9->1.2: " + sav_list +
                   (strictly_decreasing ? " [strictly decreasing]" : " [NOT strictly decreasing]");

    // (b) heavy-tailed savings respond to the violation budget; the
    // markov-modulated family barely moves.
    const std::vector<double> eps_grid{1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
    dcr::ExperimentConfig cfg_ht = bursty_config();
    cfg_ht.alphas = {1.5};
    cfg_ht.violation_probs = eps_grid;
    const dcr::SweepResult res_ht = dcr::run_sweep(cfg_ht);
    dcr::ExperimentConfig cfg_mm = bursty_config();
    cfg_mm.family = dcr::Family::mm;
    cfg_mm.t_slots = {6.0};
    cfg_mm.violation_probs = eps_grid;
    const dcr::SweepResult res_mm = dcr::run_sweep(cfg_mm);

    bool ht_nondecreasing = true;
    double tv_ht = 0.0, tv_mm = 0.0;
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!res_ht.rows[i].error.empty() || !res_mm.rows[i].error.empty()) {
            ht_nondecreasing = false;
            break;
        }
        if (i > 0) {
            const double dht = res_ht.rows[i].savings_optimal - res_ht.rows[i - 1].savings_optimal;
            const double dmm = res_mm.rows[i].savings_optimal - res_mm.rows[i - 1].savings_optimal;
            if (dht < -1e-12) ht_nondecreasing = false;
            tv_ht += std::abs(dht);
            tv_mm += std::abs(dmm);
        }
    }
    const bool b_ok = ht_nondecreasing && tv_mm < tv_ht;
    if (!b_ok) out.pass = false;
    out.details += "; (b) savings variation over eps in [1e-6,1e-2]: heavy-tailed " + fmt(tv_ht) +
                   (ht_nondecreasing ? " non-decreasing" : " NOT non-decreasing") +
                   ", markov-modulated " + fmt(tv_mm) + " (must be smaller)";

    // (c) the 20%-savings threshold moves less with the switching cost than
    // with the violation budget.
    // At alpha=1.2 the tight budget makes 20% savings unreachable at any
    // burstiness in range, so the displacement is measured on tails where
    // every cell resolves.
    dcr::ExperimentConfig cfg_beta = bursty_config();
    cfg_beta.alphas = {1.3, 1.5, 1.7};
    cfg_beta.betas = {1.0, 18.0};
    const dcr::ThresholdMap map_beta = dcr::threshold_map(cfg_beta, 0.2);
    dcr::ExperimentConfig cfg_eps = bursty_config();
    cfg_eps.alphas = {1.3, 1.5, 1.7};
    cfg_eps.violation_probs = {1e-4, 1e-2};
    const dcr::ThresholdMap map_eps = dcr::threshold_map(cfg_eps, 0.2);

    // Cells are ordered alpha-major with the (beta, eps) pair minor.
    bool all_ok = true;
    double disp_beta = 0.0, disp_eps = 0.0;
    for (std::size_t a = 0; a < 3; ++a) {
        const dcr::ThresholdCell& b1 = map_beta.cells[2 * a];
        const dcr::ThresholdCell& b2 = map_beta.cells[2 * a + 1];
        const dcr::ThresholdCell& e1 = map_eps.cells[2 * a];
        const dcr::ThresholdCell& e2 = map_eps.cells[2 * a + 1];
        for (const dcr::ThresholdCell* c : {&b1, &b2, &e1, &e2}) {
            if (c->status != "ok") all_ok = false;
        }
        disp_beta += std::abs(b1.threshold_pmr - b2.threshold_pmr) / 3.0;
        disp_eps += std::abs(e1.threshold_pmr - e2.threshold_pmr) / 3.0;
    }
    const bool c_ok = all_ok && disp_beta < disp_eps;
    if (!c_ok) out.pass = false;
    out.details += "; (c) mean 20%-threshold PMR displacement: switching-cost axis " +
                   fmt(disp_beta) + " vs violation-budget axis " + fmt(disp_eps) +
                   (all_ok ? "" : " [threshold solve failed]") +
                   (c_ok ? " [smaller]" : " [NOT smaller]");
    return out;
}

// ---- criterion 10: byte-identical sweep outputs ----------------------------------

#ifndef DCR_BIN_PATH
#error "DCR_BIN_PATH must point at the CLI binary"
#endif
#ifndef DCR_CONFIG_DIR
#error "DCR_CONFIG_DIR must point at the shipped configs"
#endif

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Outcome criterion_10() {
    const auto base = std::filesystem::temp_directory_path();
    const auto dir_a = base / "dcr_accept_sweep_a";
    const auto dir_b = base / "dcr_accept_sweep_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    const std::string config = std::string(DCR_CONFIG_DIR) + "/default_sweep.json";

    Outcome out;
    for (const auto& dir : {dir_a, dir_b}) {
        const std::string cmd = std::string("\"") + DCR_BIN_PATH + "\" sweep --config \"" +
                                config + "\" --out \"" + dir.string() + "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        if (code != 0) {
            out.details = "sweep run exited with code " + std::to_string(code);
            return out;
        }
    }
    const std::string csv_a = slurp(dir_a / "sweep.csv");
    const std::string csv_b = slurp(dir_b / "sweep.csv");
    const std::string man_a = slurp(dir_a / "sweep_manifest.json");
    const std::string man_b = slurp(dir_b / "sweep_manifest.json");
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    out.pass = !csv_a.empty() && csv_a == csv_b && !man_a.empty() && man_a == man_b;
    out.details = std::string("two sweep runs on the shipped default config: CSV ") +
                  (csv_a == csv_b ? "byte-identical" : "DIFFER") + " (" +
                  std::to_string(csv_a.size()) + " bytes), manifest " +
                  (man_a == man_b ? "byte-identical" : "DIFFER");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 64;
        }
    }
    if (selected < 0 || selected > 10) {
        std::fprintf(stderr, "criterion must be in 1..10\n");
        return 64;
    }

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
        {9, criterion_9}, {10, criterion_10},
    };

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        if (selected != 0 && id != selected) continue;
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.details = std::string("unexpected exception: ") + e.what();
        }
        std::printf("CRITERION %d: %s — %s\n", id, outcome.pass ? "PASS" : "FAIL",
                    outcome.details.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
