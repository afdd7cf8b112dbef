// Command-line front end for the dynamic-capacity-resizing library.
//
// Subcommands:
//   capacity   effective-capacity / server-floor solve for one mean rate
//   simulate   slot-level arrival sampling + virtual-queue delay check
//   plan       per-frame floors + static / offline-optimal / LCP plans for a trace
//   sweep      config-driven experiment sweep (CSV + manifest)
//   threshold  config-driven savings-threshold map (CSV + manifest)
//
// Exit codes: 0 success, 1 validation/usage error, 2 solver non-convergence.
// The DCR_SEED environment variable overrides default RNG seeds (an explicit
// --seed flag still wins).
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcr/arrival.hpp"
#include "dcr/bench.hpp"
#include "dcr/capacity.hpp"
#include "dcr/error.hpp"
#include "dcr/plan.hpp"
#include "dcr/queue.hpp"
#include "dcr/text.hpp"
#include "dcr/trace.hpp"

namespace {

using nlohmann::json;

std::uint64_t seed_with_env(std::uint64_t cli_seed, bool cli_seed_given) {
    if (cli_seed_given) return cli_seed;
    if (const char* env = std::getenv("DCR_SEED")) {
        try {
            return static_cast<std::uint64_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw dcr::ValidationError("DCR_SEED must be an unsigned integer, got: " +
                                       std::string(env));
        }
    }
    return cli_seed;
}

struct FamilyFlags {
    std::string family = "pareto";
    double alpha = 1.5;
    double t_slots = 6.0;
    double low_frac = 0.5;
    double high_frac = 2.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "Arrival family: poisson | mm | pareto")
            ->check(CLI::IsMember({"poisson", "mm", "pareto"}));
        cmd->add_option("--alpha", alpha, "Pareto tail index (>1)");
        cmd->add_option("--t", t_slots, "MM mean cycle time, slots");
        cmd->add_option("--low-frac", low_frac, "MM low rate as a fraction of the mean");
        cmd->add_option("--high-frac", high_frac, "MM high rate as a multiple of the mean");
    }

    dcr::FamilyParams params() const {
        dcr::FamilyParams fp;
        fp.family = dcr::family_from_tag(family);
        fp.alpha = alpha;
        fp.t_slots = t_slots;
        fp.low_frac = low_frac;
        fp.high_frac = high_frac;
        return fp;
    }

    dcr::ArrivalModel model(double lambda) const {
        const dcr::Family f = dcr::family_from_tag(family);
        if (f == dcr::Family::poisson) return dcr::PoissonModel{lambda};
        if (f == dcr::Family::mm) {
            return dcr::mm_from_burst_param(lambda, low_frac * lambda, high_frac * lambda,
                                            t_slots);
        }
        return dcr::pareto_from_mean(lambda, alpha);
    }
};

json solution_json(const dcr::CapacitySolution& sol) {
    json j;
    j["capacity"] = sol.capacity;
    j["theta_star"] = sol.theta_star > 0.0 ? json(sol.theta_star) : json();
    j["gamma_star"] = sol.gamma_star > 0.0 ? json(sol.gamma_star) : json();
    j["residual"] = sol.residual;
    j["iterations"] = sol.iterations;
    return j;
}

int cmd_capacity(const FamilyFlags& fam, double lambda, double dbar_seconds, double eps,
                 double slot_seconds, double mu) {
    const dcr::SlaSpec sla = dcr::sla_from_seconds(dbar_seconds, eps, slot_seconds);
    const dcr::CapacitySolution sol = dcr::capacity_for_mean(lambda, fam.params(), sla);
    json out = solution_json(sol);
    out["family"] = fam.family;
    out["lambda"] = lambda;
    out["delay_bound_slots"] = sla.delay_bound;
    out["violation_prob"] = sla.violation_prob;
    out["floor_servers"] = sol.capacity / mu;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const FamilyFlags& fam, double lambda, long long slots, double servers,
                 double mu, double dbar_seconds, double slot_seconds, std::uint64_t seed,
                 long long warmup, const std::string& out_path) {
    const dcr::ArrivalModel model = fam.model(lambda);
    const dcr::SlotTrace trace = dcr::sample_slots(model, slots, seed);
    const dcr::VirtualQueueRun run = dcr::simulate_delays(trace, servers * mu);
    const double dbar_slots = dbar_seconds / slot_seconds;
    const double violation = dcr::empirical_violation(run, dbar_slots, warmup);

    double max_delay = 0.0;
    double mean_backlog = 0.0;
    for (std::size_t i = 0; i < run.delay.size(); ++i) {
        max_delay = std::max(max_delay, run.delay[i]);
        mean_backlog += run.backlog[i];
    }
    mean_backlog /= static_cast<double>(run.backlog.size());

    if (!out_path.empty()) dcr::save_queue_run(run, out_path);

    json out;
    out["family"] = fam.family;
    out["lambda"] = lambda;
    out["slots"] = slots;
    out["seed"] = seed;
    out["servers"] = servers;
    out["capacity"] = servers * mu;
    out["delay_bound_slots"] = dbar_slots;
    out["warmup_slots"] = warmup;
    out["violation_frac"] = violation;
    out["max_delay_slots"] = max_delay;
    out["mean_backlog"] = mean_backlog;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_plan(const std::string& trace_path, double slot_seconds, long long frame_slots,
             const FamilyFlags& fam, double dbar_seconds, double eps, double e0, double e1,
             double beta, double mu, const std::string& out_path) {
    const dcr::WorkloadTrace trace = dcr::load_frame_trace(trace_path, slot_seconds, frame_slots);
    const dcr::SlaSpec sla = dcr::sla_from_seconds(dbar_seconds, eps, slot_seconds);
    const std::vector<double> floors = dcr::capacity_profile(trace, fam.params(), sla, mu);
    const dcr::CostModel cost{e0, e1, beta, mu};
    const dcr::ProvisioningPlan stat = dcr::optimal_static(floors, trace, cost);
    const dcr::ProvisioningPlan opt = dcr::offline_optimal(floors, trace, cost);
    const dcr::ProvisioningPlan lcp = dcr::run_lcp(floors, trace, cost);

    if (!out_path.empty()) {
        std::string csv = "frame;floor;n_opt;n_lcp;n_static\n";
        for (std::size_t k = 0; k < floors.size(); ++k) {
            csv += std::to_string(k);
            csv += ';';
            csv += dcr::format_double(floors[k]);
            csv += ';';
            csv += dcr::format_double(opt.n[k]);
            csv += ';';
            csv += dcr::format_double(lcp.n[k]);
            csv += ';';
            csv += dcr::format_double(stat.n[k]);
            csv += '\n';
        }
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw dcr::ValidationError("cannot open for writing: " + out_path);
        out << csv;
    }

    auto plan_json = [](const dcr::ProvisioningPlan& p) {
        return json{{"operating_cost", p.operating_cost},
                    {"switching_cost", p.switching_cost},
                    {"total_cost", p.total_cost}};
    };
    json out;
    out["frames"] = floors.size();
    out["family"] = fam.family;
    out["static"] = plan_json(stat);
    out["optimal"] = plan_json(opt);
    out["lcp"] = plan_json(lcp);
    out["savings_optimal"] = dcr::savings(opt.total_cost, stat.total_cost);
    out["savings_lcp"] = dcr::savings(lcp.total_cost, stat.total_cost);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    dcr::ExperimentConfig config = dcr::load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    const dcr::SweepResult result = dcr::run_sweep(config);
    std::cout << dcr::sweep_manifest_json(result, config);
    return 0;
}

int cmd_threshold(const std::string& config_path, const std::string& out_dir,
                  std::optional<double> target) {
    dcr::ExperimentConfig config = dcr::load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    const double t = target.value_or(config.target_savings);
    const dcr::ThresholdMap map = dcr::threshold_map(config, t);
    std::cout << dcr::threshold_manifest_json(map, config);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven sizing of dynamic server provisioning"};
    app.require_subcommand(1);

    // capacity ---------------------------------------------------------------
    CLI::App* cap = app.add_subcommand("capacity", "Solve the effective capacity for one mean rate");
    FamilyFlags cap_fam;
    cap_fam.attach(cap);
    double cap_lambda = 300.0, cap_dbar = 0.2, cap_eps = 1e-3, cap_slot = 1.0, cap_mu = 1.0;
    cap->add_option("--lambda", cap_lambda, "Mean arrival rate, jobs per slot")->required();
    cap->add_option("--dbar", cap_dbar, "Delay bound, seconds");
    cap->add_option("--eps", cap_eps, "Violation probability budget");
    cap->add_option("--slot-seconds", cap_slot, "Slot duration, seconds");
    cap->add_option("--mu", cap_mu, "Per-server service rate, jobs per slot");

    // simulate ---------------------------------------------------------------
    CLI::App* sim = app.add_subcommand("simulate", "Sample arrivals and run the virtual queue");
    FamilyFlags sim_fam;
    sim_fam.attach(sim);
    double sim_lambda = 300.0, sim_servers = 0.0, sim_mu = 1.0, sim_dbar = 0.2, sim_slot = 1.0;
    long long sim_slots = 10000, sim_warmup = 0;
    std::uint64_t sim_seed = 1;
    std::string sim_out;
    sim->add_option("--lambda", sim_lambda, "Mean arrival rate, jobs per slot")->required();
    sim->add_option("--slots", sim_slots, "Number of slots to simulate");
    sim->add_option("--servers", sim_servers, "Active server count")->required();
    sim->add_option("--mu", sim_mu, "Per-server service rate, jobs per slot");
    sim->add_option("--dbar", sim_dbar, "Delay bound, seconds");
    sim->add_option("--slot-seconds", sim_slot, "Slot duration, seconds");
    CLI::Option* sim_seed_opt = sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--warmup", sim_warmup, "Slots excluded from the violation fraction");
    sim->add_option("--out", sim_out, "Write slot;backlog;delay CSV here");

    // plan ---------------------------------------------------------------------
    CLI::App* plan = app.add_subcommand("plan", "Floors + static/optimal/LCP plans for a trace");
    FamilyFlags plan_fam;
    plan_fam.attach(plan);
    std::string plan_trace, plan_out;
    double plan_slot = 1.0, plan_dbar = 0.2, plan_eps = 1e-3;
    double plan_e0 = 1.0, plan_e1 = 0.0, plan_beta = 6.0, plan_mu = 1.0;
    long long plan_frame_slots = 600;
    plan->add_option("--trace", plan_trace, "frame;lambda CSV path")->required();
    plan->add_option("--frame-slots", plan_frame_slots, "Slots per frame");
    plan->add_option("--slot-seconds", plan_slot, "Slot duration, seconds");
    plan->add_option("--dbar", plan_dbar, "Delay bound, seconds");
    plan->add_option("--eps", plan_eps, "Violation probability budget");
    plan->add_option("--e0", plan_e0, "Energy cost per server-frame");
    plan->add_option("--e1", plan_e1, "Energy cost per unit arrival");
    plan->add_option("--beta", plan_beta, "Switching cost per server toggled on");
    plan->add_option("--mu", plan_mu, "Per-server service rate, jobs per slot");
    plan->add_option("--out", plan_out, "Write frame;floor;n_opt;n_lcp;n_static CSV here");

    // sweep ----------------------------------------------------------------------
    CLI::App* sweep = app.add_subcommand("sweep", "Run a config-driven experiment sweep");
    std::string sweep_config, sweep_out;
    sweep->add_option("--config", sweep_config, "JSON config path")->required();
    sweep->add_option("--out", sweep_out, "Output directory (overrides config out_dir)");

    // threshold -------------------------------------------------------------------
    CLI::App* thr = app.add_subcommand("threshold", "Map savings-threshold PMRs");
    std::string thr_config, thr_out;
    double thr_target = -1.0;
    thr->add_option("--config", thr_config, "JSON config path")->required();
    thr->add_option("--out", thr_out, "Output directory (overrides config out_dir)");
    CLI::Option* thr_target_opt =
        thr->add_option("--target", thr_target, "Savings target in [0,1) (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cap->parsed()) {
            return cmd_capacity(cap_fam, cap_lambda, cap_dbar, cap_eps, cap_slot, cap_mu);
        }
        if (sim->parsed()) {
            const std::uint64_t seed = seed_with_env(sim_seed, sim_seed_opt->count() > 0);
            return cmd_simulate(sim_fam, sim_lambda, sim_slots, sim_servers, sim_mu, sim_dbar,
                                sim_slot, seed, sim_warmup, sim_out);
        }
        if (plan->parsed()) {
            return cmd_plan(plan_trace, plan_slot, plan_frame_slots, plan_fam, plan_dbar,
                            plan_eps, plan_e0, plan_e1, plan_beta, plan_mu, plan_out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_config, sweep_out);
        }
        if (thr->parsed()) {
            std::optional<double> target;
            if (thr_target_opt->count() > 0) target = thr_target;
            return cmd_threshold(thr_config, thr_out, target);
        }
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const dcr::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dcr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
