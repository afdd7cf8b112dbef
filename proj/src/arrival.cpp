#include "dcr/arrival.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dcr/error.hpp"
#include "dcr/rng.hpp"
#include "dcr/text.hpp"

namespace dcr {

void validate(const PoissonModel& model) {
    if (!(model.rate > 0.0) || !std::isfinite(model.rate)) {
        throw ValidationError("Poisson rate must be positive and finite");
    }
}

void validate(const MMModel& model) {
    if (!(model.lambda_l > 0.0) || !std::isfinite(model.lambda_h)) {
        throw ValidationError("MM rates must be positive and finite");
    }
    if (!(model.lambda_l <= model.lambda_h)) {
        throw ValidationError("MM requires lambda_l <= lambda_h");
    }
    if (!(model.p_h > 0.0 && model.p_h <= 1.0) || !(model.p_l > 0.0 && model.p_l <= 1.0)) {
        throw ValidationError("MM transition probabilities must lie in (0,1]");
    }
}

void validate(const ParetoModel& model) {
    if (!(model.alpha > 1.0 && model.alpha < 2.0)) {
        throw ValidationError("Pareto tail index must lie strictly between 1 and 2");
    }
    if (!(model.b > 0.0) || !std::isfinite(model.b)) {
        throw ValidationError("Pareto scale must be positive and finite");
    }
}

void validate(const ArrivalModel& model) {
    std::visit([](const auto& m) { validate(m); }, model);
}

double model_mean(const PoissonModel& model) {
    return model.rate;
}

double model_mean(const MMModel& model) {
    return (model.p_l * model.lambda_l + model.p_h * model.lambda_h) / (model.p_h + model.p_l);
}

double model_mean(const ParetoModel& model) {
    return model.alpha * model.b / (model.alpha - 1.0);
}

double model_mean(const ArrivalModel& model) {
    return std::visit([](const auto& m) { return model_mean(m); }, model);
}

double mm_stationary_high(const MMModel& model) {
    return model.p_h / (model.p_h + model.p_l);
}

std::string model_tag(const ArrivalModel& model) {
    if (std::holds_alternative<PoissonModel>(model)) return "poisson";
    if (std::holds_alternative<MMModel>(model)) return "mm";
    return "pareto";
}

MMModel mm_from_burst_param(double mean, double lambda_l, double lambda_h, double t_slots) {
    if (!(lambda_l > 0.0) || !(lambda_l < mean) || !(mean < lambda_h)) {
        throw ValidationError("mm_from_burst_param requires 0 < lambda_l < mean < lambda_h");
    }
    if (!(t_slots > 0.0)) {
        throw ValidationError("mm_from_burst_param cycle time must be positive");
    }
    double pi_h = (mean - lambda_l) / (lambda_h - lambda_l);  // stationary high-state share
    double min_t = std::max(1.0 / pi_h, 1.0 / (1.0 - pi_h));
    double p_h = 1.0 / (t_slots * (1.0 - pi_h));
    double p_l = 1.0 / (t_slots * pi_h);
    if (p_h > 1.0 || p_l > 1.0) {
        throw InfeasibleCycleError(
            "cycle time " + format_double(t_slots) + " slots is too short for this rate split; " +
                "minimal feasible cycle time is " + format_double(min_t) + " slots",
            min_t);
    }
    MMModel model{lambda_l, lambda_h, p_h, p_l};
    validate(model);
    return model;
}

ParetoModel pareto_from_mean(double mean, double alpha) {
    if (!(mean > 0.0)) {
        throw ValidationError("pareto_from_mean requires a positive mean");
    }
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw ValidationError("Pareto tail index must lie strictly between 1 and 2");
    }
    ParetoModel model{alpha, mean * (alpha - 1.0) / alpha};
    validate(model);
    return model;
}

SlotTrace sample_slots(const ArrivalModel& model, long long num_slots, std::uint64_t seed) {
    validate(model);
    if (num_slots < 1) {
        throw ValidationError("sample_slots needs at least one slot");
    }
    SlotTrace trace;
    trace.model = model_tag(model);
    trace.seed = seed;
    trace.arrivals.resize(static_cast<std::size_t>(num_slots));
    Rng rng(seed);

    if (const auto* poisson = std::get_if<PoissonModel>(&model)) {
        for (double& a : trace.arrivals) {
            a = rng.poisson(poisson->rate);
        }
    } else if (const auto* mm = std::get_if<MMModel>(&model)) {
        bool high = rng.u01() < mm_stationary_high(*mm);  // stationary start
        for (double& a : trace.arrivals) {
            a = high ? mm->lambda_h : mm->lambda_l;
            double u = rng.u01();
            if (high) {
                if (u < mm->p_l) high = false;
            } else {
                if (u < mm->p_h) high = true;
            }
        }
    } else {
        const auto& pareto = std::get<ParetoModel>(model);
        for (double& a : trace.arrivals) {
            a = rng.pareto(pareto.alpha, pareto.b);
        }
    }
    return trace;
}

void save_slot_trace(const SlotTrace& trace, const std::string& path) {
    if (trace.arrivals.empty()) {
        throw ValidationError("cannot save an empty slot trace");
    }
    std::ostringstream out;
    out << "slot;arrival\n";
    for (std::size_t t = 0; t < trace.arrivals.size(); ++t) {
        out << t << ';' << format_double(trace.arrivals[t]) << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ValidationError("cannot write slot trace file: " + path);
    }
    file << out.str();
    if (!file) {
        throw ValidationError("write failed for slot trace file: " + path);
    }
}

}  // namespace dcr
