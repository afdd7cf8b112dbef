// Experiment harness implementation. Sweep points and threshold cells are
// pure functions of the config, evaluated on a bounded std::async pool and
// emitted in fixed coordinate order so reruns are byte-identical.
#include "dcr/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dcr/error.hpp"
#include "dcr/text.hpp"

namespace dcr {

namespace {

using nlohmann::json;

// ---- config parsing --------------------------------------------------------

double number_at(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_number()) {
        throw ValidationError("config: \"" + key + "\" must be a number");
    }
    return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    return number_at(j, key);
}

std::vector<double> list_or(const json& j, const std::string& key,
                            std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const json& item : v) {
            if (!item.is_number()) {
                throw ValidationError("config: \"" + key + "\" entries must be numbers");
            }
            out.push_back(item.get<double>());
        }
    } else if (v.is_number()) {
        out.push_back(v.get<double>());
    } else {
        throw ValidationError("config: \"" + key + "\" must be a number or array of numbers");
    }
    return out;
}

TraceSource trace_source_from_json(const json& j) {
    if (!j.contains("trace") || !j.at("trace").is_object()) {
        throw ValidationError("config: missing \"trace\" object");
    }
    const json& t = j.at("trace");
    TraceSource source;
    source.frame_slots = static_cast<long long>(number_or(t, "frame_slots", 600));
    source.slot_seconds = number_or(t, "slot_seconds", 1.0);
    const bool has_synth = t.contains("synth");
    const bool has_file = t.contains("file");
    if (has_synth == has_file) {
        throw ValidationError("config: trace needs exactly one of \"synth\" or \"file\"");
    }
    if (has_synth) {
        const json& s = t.at("synth");
        if (!s.is_object()) throw ValidationError("config: trace.synth must be an object");
        source.is_synth = true;
        source.synth.frames = static_cast<long long>(number_at(s, "frames"));
        source.synth.mean_rate = number_at(s, "mean_rate");
        source.synth.pmr = number_at(s, "pmr");
        source.synth.periods = static_cast<int>(number_or(s, "periods", 1));
        source.synth.seed = static_cast<std::uint64_t>(number_or(s, "seed", 42));
    } else {
        if (!t.at("file").is_string()) {
            throw ValidationError("config: trace.file must be a string path");
        }
        source.is_synth = false;
        source.file = t.at("file").get<std::string>();
        if (!std::filesystem::exists(source.file)) {
            throw ValidationError("config: trace file not found: " + source.file);
        }
    }
    return source;
}

void require_nonempty(const std::vector<double>& v, const char* name) {
    if (v.empty()) {
        throw ValidationError(std::string("config: sweep list \"") + name +
                              "\" must be non-empty");
    }
}

// ---- bounded ordered parallel map -------------------------------------------

// Evaluates fn(0..count-1) with at most `workers` concurrent tasks and
// returns results in index order. fn must be pure.
template <typename Fn>
auto parallel_map(std::size_t count, int workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> results;
    results.reserve(count);
    int pool = workers;
    if (pool <= 0) pool = static_cast<int>(std::thread::hardware_concurrency());
    if (pool <= 0) pool = 1;
    if (pool == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) results.push_back(fn(i));
        return results;
    }
    for (std::size_t start = 0; start < count; start += static_cast<std::size_t>(pool)) {
        const std::size_t stop = std::min(count, start + static_cast<std::size_t>(pool));
        std::vector<std::future<R>> batch;
        batch.reserve(stop - start);
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, fn, i));
        }
        for (auto& f : batch) results.push_back(f.get());
    }
    return results;
}

// ---- shared pipeline pieces --------------------------------------------------

FamilyParams params_for(const ExperimentConfig& config, double param) {
    FamilyParams fp;
    fp.family = config.family;
    fp.low_frac = config.low_frac;
    fp.high_frac = config.high_frac;
    if (config.family == Family::pareto) fp.alpha = param;
    if (config.family == Family::mm) fp.t_slots = param;
    return fp;
}

struct PlanTriple {
    double cost_static = 0.0;
    double cost_optimal = 0.0;
    double cost_lcp = 0.0;
};

PlanTriple plan_costs_for(const std::vector<double>& floors, const WorkloadTrace& trace,
                          const CostModel& cost) {
    PlanTriple out;
    out.cost_static = optimal_static(floors, trace, cost).total_cost;
    out.cost_optimal = offline_optimal(floors, trace, cost).total_cost;
    out.cost_lcp = run_lcp(floors, trace, cost).total_cost;
    return out;
}

std::string one_line(std::string text) {
    for (char& c : text) {
        if (c == '\n' || c == '\r' || c == ';') c = ' ';
    }
    return text;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open for writing: " + path.string());
    }
    out << text;
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

json config_echo(const ExperimentConfig& config) {
    json trace;
    trace["frame_slots"] = config.trace.frame_slots;
    trace["slot_seconds"] = config.trace.slot_seconds;
    if (config.trace.is_synth) {
        trace["synth"] = {{"frames", config.trace.synth.frames},
                          {"mean_rate", config.trace.synth.mean_rate},
                          {"pmr", config.trace.synth.pmr},
                          {"periods", config.trace.synth.periods},
                          {"seed", config.trace.synth.seed}};
    } else {
        trace["file"] = config.trace.file;
    }
    json echo;
    echo["trace"] = trace;
    echo["family"] = family_tag(config.family);
    echo["alpha"] = config.alphas;
    echo["t"] = config.t_slots;
    echo["low_frac"] = config.low_frac;
    echo["high_frac"] = config.high_frac;
    echo["dbar_seconds"] = config.delay_bounds_seconds;
    echo["eps"] = config.violation_probs;
    echo["beta"] = config.betas;
    echo["gamma"] = config.gammas;
    echo["e0"] = config.e0;
    echo["e1"] = config.e1;
    echo["mu"] = config.mu;
    echo["workers"] = config.workers;
    echo["target_savings"] = config.target_savings;
    return echo;
}

}  // namespace

// ---- config ------------------------------------------------------------------

void ExperimentConfig::validate() const {
    require_nonempty(alphas, "alpha");
    require_nonempty(t_slots, "t");
    require_nonempty(delay_bounds_seconds, "dbar_seconds");
    require_nonempty(violation_probs, "eps");
    require_nonempty(betas, "beta");
    require_nonempty(gammas, "gamma");
    if (!(low_frac > 0.0) || !(low_frac < 1.0)) {
        throw ValidationError("config: low_frac must lie in (0, 1)");
    }
    if (!(high_frac > 1.0)) {
        throw ValidationError("config: high_frac must exceed 1");
    }
    CostModel base{e0, e1, betas.front(), mu};
    base.validate();
    for (double b : betas) {
        CostModel c{e0, e1, b, mu};
        c.validate();
    }
    for (double g : gammas) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw ValidationError("config: gamma values must be positive and finite");
        }
    }
    if (!(target_savings >= 0.0) || !(target_savings < 1.0)) {
        throw ValidationError("config: target_savings must lie in [0, 1)");
    }
}

std::vector<double> ExperimentConfig::family_values() const {
    switch (family) {
        case Family::pareto: return alphas;
        case Family::mm: return t_slots;
        case Family::poisson: return {0.0};
    }
    throw ValidationError("config: unknown family");
}

ExperimentConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");

    ExperimentConfig config;
    config.trace = trace_source_from_json(j);
    if (!j.contains("family") || !j.at("family").is_string()) {
        throw ValidationError("config: missing \"family\" (poisson | mm | pareto)");
    }
    config.family = family_from_tag(j.at("family").get<std::string>());
    config.alphas = list_or(j, "alpha", {1.5});
    config.t_slots = list_or(j, "t", {6.0});
    config.low_frac = number_or(j, "low_frac", 0.5);
    config.high_frac = number_or(j, "high_frac", 2.0);
    config.delay_bounds_seconds = list_or(j, "dbar_seconds", {0.2});
    config.violation_probs = list_or(j, "eps", {1e-3});
    config.betas = list_or(j, "beta", {6.0});
    config.gammas = list_or(j, "gamma", {1.0});
    config.e0 = number_or(j, "e0", 1.0);
    config.e1 = number_or(j, "e1", 0.0);
    config.mu = number_or(j, "mu", 1.0);
    config.workers = static_cast<int>(number_or(j, "workers", 0));
    config.target_savings = number_or(j, "target_savings", 0.2);
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string()) {
            throw ValidationError("config: out_dir must be a string");
        }
        config.out_dir = j.at("out_dir").get<std::string>();
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config file not found: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

WorkloadTrace build_trace(const TraceSource& source) {
    if (source.is_synth) {
        return synth_diurnal(source.synth.frames, source.synth.mean_rate, source.synth.pmr,
                             source.synth.periods, source.synth.seed, source.frame_slots,
                             source.slot_seconds);
    }
    return load_frame_trace(source.file, source.slot_seconds, source.frame_slots);
}

// ---- savings -----------------------------------------------------------------

double savings(double cost_dynamic, double cost_static) {
    if (!(cost_static > 0.0) || !std::isfinite(cost_static)) {
        throw ValidationError("savings: static cost must be positive and finite");
    }
    if (!std::isfinite(cost_dynamic) || cost_dynamic < 0.0) {
        throw ValidationError("savings: dynamic cost must be non-negative and finite");
    }
    if (cost_dynamic > cost_static * (1.0 + 1e-9)) {
        throw ValidationError("savings: dynamic cost " + format_double(cost_dynamic) +
                              " exceeds static cost " + format_double(cost_static));
    }
    const double s = (cost_static - cost_dynamic) / cost_static;
    return s < 0.0 ? 0.0 : s;
}

// ---- sweep -------------------------------------------------------------------

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const WorkloadTrace base = build_trace(config.trace);

    struct Coord {
        double param, gamma, dbar_s, eps, beta;
    };
    std::vector<Coord> coords;
    for (double param : config.family_values()) {
        for (double gamma : config.gammas) {
            for (double dbar_s : config.delay_bounds_seconds) {
                for (double eps : config.violation_probs) {
                    for (double beta : config.betas) {
                        coords.push_back({param, gamma, dbar_s, eps, beta});
                    }
                }
            }
        }
    }

    const std::string tag = family_tag(config.family);
    auto eval = [&](std::size_t i) -> SweepRow {
        const Coord& c = coords[i];
        SweepRow row;
        row.family = tag;
        row.param = c.param;
        row.gamma = c.gamma;
        row.delay_bound_seconds = c.dbar_s;
        row.violation_prob = c.eps;
        row.beta = c.beta;
        try {
            const WorkloadTrace t = (c.gamma == 1.0) ? base : rescale_pmr(base, c.gamma);
            row.pmr = trace_pmr(t);
            const SlaSpec sla = sla_from_seconds(c.dbar_s, c.eps, t.slot_seconds);
            const FamilyParams fp = params_for(config, c.param);
            const std::vector<double> floors = capacity_profile(t, fp, sla, config.mu);
            const CostModel cost{config.e0, config.e1, c.beta, config.mu};
            const PlanTriple plans = plan_costs_for(floors, t, cost);
            row.cost_static = plans.cost_static;
            row.cost_optimal = plans.cost_optimal;
            row.cost_lcp = plans.cost_lcp;
            row.savings_optimal = savings(plans.cost_optimal, plans.cost_static);
            row.savings_lcp = savings(plans.cost_lcp, plans.cost_static);
            row.lcp_relative =
                row.savings_optimal > 0.0 ? row.savings_lcp / row.savings_optimal : 1.0;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    SweepResult result;
    result.rows = parallel_map(coords.size(), config.workers, eval);
    result.trace_frames = static_cast<long long>(base.lambdas.size());
    result.trace_mean = trace_mean(base);
    result.trace_pmr = trace_pmr(base);

    if (!config.out_dir.empty()) {
        const std::filesystem::path dir(config.out_dir);
        std::filesystem::create_directories(dir);
        write_text_file(dir / "sweep.csv", sweep_csv(result));
        write_text_file(dir / "sweep_manifest.json", sweep_manifest_json(result, config));
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out =
        "family;param;gamma;pmr;dbar_seconds;eps;beta;cost_static;cost_optimal;"
        "cost_lcp;savings_optimal;savings_lcp;lcp_relative;error\n";
    for (const SweepRow& row : result.rows) {
        out += row.family;
        out += ';';
        out += format_double(row.param);
        out += ';';
        out += format_double(row.gamma);
        out += ';';
        const bool ok = row.error.empty();
        out += ok ? format_double(row.pmr) : std::string();
        out += ';';
        out += format_double(row.delay_bound_seconds);
        out += ';';
        out += format_double(row.violation_prob);
        out += ';';
        out += format_double(row.beta);
        out += ';';
        if (ok) {
            out += format_double(row.cost_static);
            out += ';';
            out += format_double(row.cost_optimal);
            out += ';';
            out += format_double(row.cost_lcp);
            out += ';';
            out += format_double(row.savings_optimal);
            out += ';';
            out += format_double(row.savings_lcp);
            out += ';';
            out += format_double(row.lcp_relative);
            out += ';';
        } else {
            out += ";;;;;;";
        }
        out += one_line(row.error);
        out += '\n';
    }
    return out;
}

std::string sweep_manifest_json(const SweepResult& result, const ExperimentConfig& config) {
    json m;
    m["config"] = config_echo(config);
    m["csv"] = "sweep.csv";
    m["rows"] = result.rows.size();
    std::size_t failed = 0;
    for (const SweepRow& row : result.rows) {
        if (!row.error.empty()) ++failed;
    }
    m["failed_rows"] = failed;
    m["trace"] = {{"frames", result.trace_frames},
                  {"mean", result.trace_mean},
                  {"pmr", result.trace_pmr}};
    return m.dump(2) + "\n";
}

// ---- threshold map -------------------------------------------------------------

namespace {

constexpr double kGammaLo = 0.02;
constexpr double kGammaHi = 2.0;
constexpr double kPmrTol = 0.01;
constexpr int kMonotoneProbes = 5;

struct GammaEval {
    double gamma = 0.0;
    double pmr = 0.0;
    double savings = 0.0;
};

GammaEval savings_at_gamma(const WorkloadTrace& base, const FamilyParams& fp,
                           const SlaSpec& sla, const CostModel& cost, double gamma) {
    GammaEval e;
    e.gamma = gamma;
    const WorkloadTrace t = (gamma == 1.0) ? base : rescale_pmr(base, gamma);
    e.pmr = trace_pmr(t);
    const std::vector<double> floors = capacity_profile(t, fp, sla, cost.mu);
    const double cost_static = optimal_static(floors, t, cost).total_cost;
    const double cost_optimal = offline_optimal(floors, t, cost).total_cost;
    e.savings = savings(cost_optimal, cost_static);
    return e;
}

ThresholdCell solve_threshold_cell(const WorkloadTrace& base, const FamilyParams& fp,
                                   const SlaSpec& sla, const CostModel& cost,
                                   double target) {
    ThresholdCell cell;
    if (target == 0.0) {
        // Any trace, even a constant one (PMR 1), meets a zero target.
        cell.threshold_pmr = 1.0;
        cell.achieved_savings = 0.0;
        cell.status = "ok";
        return cell;
    }

    // Probe a log-spaced gamma ladder: verifies the monotonicity the
    // bisection needs and narrows the initial bracket for free.
    std::vector<GammaEval> probes;
    probes.reserve(kMonotoneProbes);
    const double log_lo = std::log(kGammaLo);
    const double log_hi = std::log(kGammaHi);
    for (int i = 0; i < kMonotoneProbes; ++i) {
        const double f = static_cast<double>(i) / (kMonotoneProbes - 1);
        const double gamma = std::exp(log_lo + f * (log_hi - log_lo));
        probes.push_back(savings_at_gamma(base, fp, sla, cost, gamma));
    }
    for (int i = 1; i < kMonotoneProbes; ++i) {
        if (probes[i].savings < probes[i - 1].savings - 1e-9) {
            cell.status = "non-monotone";
            return cell;
        }
    }
    if (probes.back().savings < target) {
        cell.status = "unreachable";
        cell.achieved_savings = probes.back().savings;
        cell.threshold_pmr = probes.back().pmr;
        return cell;
    }
    if (probes.front().savings >= target) {
        // Already met at the flattest trace the bracket can produce.
        cell.status = "ok";
        cell.threshold_pmr = probes.front().pmr;
        cell.achieved_savings = probes.front().savings;
        return cell;
    }

    GammaEval lo = probes.front();
    GammaEval hi = probes.back();
    for (int i = 1; i < kMonotoneProbes; ++i) {
        if (probes[i].savings >= target) {
            lo = probes[i - 1];
            hi = probes[i];
            break;
        }
    }
    int iterations = 0;
    while (hi.pmr - lo.pmr > kPmrTol && iterations < 200) {
        const double mid_gamma = 0.5 * (lo.gamma + hi.gamma);
        const GammaEval mid = savings_at_gamma(base, fp, sla, cost, mid_gamma);
        if (mid.savings >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++iterations;
    }
    cell.status = "ok";
    cell.threshold_pmr = hi.pmr;
    cell.achieved_savings = hi.savings;
    return cell;
}

}  // namespace

ThresholdMap threshold_map(const ExperimentConfig& config, double target_savings) {
    config.validate();
    if (!(target_savings >= 0.0) || !(target_savings < 1.0)) {
        throw ValidationError("threshold_map: target savings must lie in [0, 1)");
    }
    const WorkloadTrace base = build_trace(config.trace);
    const double dbar_s = config.delay_bounds_seconds.front();

    struct Coord {
        double param, beta, eps;
    };
    std::vector<Coord> coords;
    for (double param : config.family_values()) {
        for (double beta : config.betas) {
            for (double eps : config.violation_probs) {
                coords.push_back({param, beta, eps});
            }
        }
    }

    const std::string tag = family_tag(config.family);
    auto eval = [&](std::size_t i) -> ThresholdCell {
        const Coord& c = coords[i];
        ThresholdCell cell;
        try {
            const FamilyParams fp = params_for(config, c.param);
            const SlaSpec sla = sla_from_seconds(dbar_s, c.eps, base.slot_seconds);
            const CostModel cost{config.e0, config.e1, c.beta, config.mu};
            cell = solve_threshold_cell(base, fp, sla, cost, target_savings);
        } catch (const std::exception& e) {
            cell.status = std::string("error: ") + e.what();
        }
        cell.family = tag;
        cell.param = c.param;
        cell.delay_bound_seconds = dbar_s;
        cell.violation_prob = c.eps;
        cell.beta = c.beta;
        return cell;
    };

    ThresholdMap map;
    map.target_savings = target_savings;
    map.cells = parallel_map(coords.size(), config.workers, eval);

    if (!config.out_dir.empty()) {
        const std::filesystem::path dir(config.out_dir);
        std::filesystem::create_directories(dir);
        write_text_file(dir / "threshold.csv", threshold_csv(map));
        write_text_file(dir / "threshold_manifest.json",
                        threshold_manifest_json(map, config));
    }
    return map;
}

std::string threshold_csv(const ThresholdMap& map) {
    std::string out =
        "family;param;dbar_seconds;eps;beta;threshold_pmr;achieved_savings;status\n";
    for (const ThresholdCell& cell : map.cells) {
        out += cell.family;
        out += ';';
        out += format_double(cell.param);
        out += ';';
        out += format_double(cell.delay_bound_seconds);
        out += ';';
        out += format_double(cell.violation_prob);
        out += ';';
        out += format_double(cell.beta);
        out += ';';
        const bool ok = cell.status == "ok" || cell.status == "unreachable";
        out += ok ? format_double(cell.threshold_pmr) : std::string();
        out += ';';
        out += ok ? format_double(cell.achieved_savings) : std::string();
        out += ';';
        out += one_line(cell.status);
        out += '\n';
    }
    return out;
}

std::string threshold_manifest_json(const ThresholdMap& map, const ExperimentConfig& config) {
    json m;
    m["config"] = config_echo(config);
    m["csv"] = "threshold.csv";
    m["cells"] = map.cells.size();
    m["target_savings"] = map.target_savings;
    std::size_t ok = 0;
    for (const ThresholdCell& cell : map.cells) {
        if (cell.status == "ok") ++ok;
    }
    m["ok_cells"] = ok;
    return m.dump(2) + "\n";
}

}  // namespace dcr
