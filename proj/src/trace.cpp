#include "dcr/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dcr/error.hpp"
#include "dcr/rng.hpp"
#include "dcr/text.hpp"

namespace dcr {

void WorkloadTrace::validate() const {
    if (lambdas.empty()) {
        throw ValidationError("trace must have at least one frame");
    }
    if (frame_slots < 1) {
        throw ValidationError("frame_slots must be >= 1");
    }
    if (!(slot_seconds > 0.0) || !std::isfinite(slot_seconds)) {
        throw ValidationError("slot_seconds must be positive and finite");
    }
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] >= 0.0) || !std::isfinite(lambdas[k])) {
            throw ValidationError("frame " + std::to_string(k) + ": rate must be finite and >= 0");
        }
    }
}

double trace_peak(const WorkloadTrace& trace) {
    trace.validate();
    return *std::max_element(trace.lambdas.begin(), trace.lambdas.end());
}

double trace_mean(const WorkloadTrace& trace) {
    trace.validate();
    double sum = std::accumulate(trace.lambdas.begin(), trace.lambdas.end(), 0.0);
    return sum / static_cast<double>(trace.lambdas.size());
}

double trace_pmr(const WorkloadTrace& trace) {
    double mean = trace_mean(trace);
    if (mean <= 0.0) {
        throw ValidationError("PMR is undefined on a zero-mean trace");
    }
    return trace_peak(trace) / mean;
}

WorkloadTrace load_frame_trace(const std::string& path, double slot_seconds, long long frame_slots) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open trace file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("empty trace file: " + path);
    }
    if (line == "frame;lambda\r") {
        line.pop_back();  // tolerate a CR on the header only if the rest parses
    }
    if (line != "frame;lambda") {
        throw ValidationError("bad trace header (expected 'frame;lambda'): " + path);
    }
    WorkloadTrace trace;
    trace.frame_slots = frame_slots;
    trace.slot_seconds = slot_seconds;
    long long expected = 0;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) {
            break;  // trailing newline
        }
        auto sep = line.find(';');
        if (sep == std::string::npos) {
            throw ValidationError("malformed trace row (no ';'): '" + line + "'");
        }
        long long idx = parse_int(std::string_view(line).substr(0, sep));
        double rate = parse_double(std::string_view(line).substr(sep + 1));
        if (idx != expected) {
            throw ValidationError("trace frame indices must be contiguous from 0; got " +
                                  std::to_string(idx) + " where " + std::to_string(expected) +
                                  " was expected");
        }
        if (rate < 0.0) {
            throw ValidationError("frame " + std::to_string(idx) + ": negative rate");
        }
        trace.lambdas.push_back(rate);
        ++expected;
    }
    if (trace.lambdas.empty()) {
        throw ValidationError("trace file has a header but no frames: " + path);
    }
    trace.validate();
    return trace;
}

void save_frame_trace(const WorkloadTrace& trace, const std::string& path) {
    trace.validate();
    std::ostringstream out;
    out << "frame;lambda\n";
    for (std::size_t k = 0; k < trace.lambdas.size(); ++k) {
        out << k << ';' << format_double(trace.lambdas[k]) << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ValidationError("cannot write trace file: " + path);
    }
    file << out.str();
    if (!file) {
        throw ValidationError("write failed for trace file: " + path);
    }
}

WorkloadTrace synth_diurnal(long long frames, double mean_rate, double pmr, int periods,
                            std::uint64_t seed, long long frame_slots, double slot_seconds) {
    if (frames < 2) {
        throw ValidationError("synth_diurnal needs at least 2 frames");
    }
    if (!(mean_rate > 0.0)) {
        throw ValidationError("synth_diurnal mean_rate must be positive");
    }
    if (!(pmr >= 1.0)) {
        throw ValidationError("synth_diurnal pmr must be >= 1");
    }
    if (periods < 1) {
        throw ValidationError("synth_diurnal needs at least 1 diurnal period");
    }

    WorkloadTrace trace;
    trace.frame_slots = frame_slots;
    trace.slot_seconds = slot_seconds;
    trace.lambdas.resize(static_cast<std::size_t>(frames));

    if (pmr == 1.0) {
        std::fill(trace.lambdas.begin(), trace.lambdas.end(), mean_rate);
        trace.validate();
        return trace;
    }

    const double two_pi = 6.283185307179586476925286766559;
    const double half_pi = 1.5707963267948966192313216916398;
    std::vector<double> base(trace.lambdas.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
        double phase = two_pi * periods * (static_cast<double>(k) + 0.5) / static_cast<double>(frames);
        base[k] = 1.0 + std::sin(phase - half_pi);  // trough-aligned day shape in [0,2]
    }

    Rng rng(seed);
    std::vector<double> jitter(base.size());
    for (double& j : jitter) {
        j = std::exp(0.75 * rng.normal());
    }

    // Grow the jitter amplitude until the raw shape's PMR reaches the target;
    // the affine map below then lands on (mean_rate, pmr) exactly, with a
    // non-negative offset so no clipping is ever needed.
    double amplitude = 0.25;
    for (int attempt = 0; attempt < 9; ++attempt) {
        std::vector<double> x(base.size());
        double sum = 0.0;
        double max = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = base[k] + amplitude * jitter[k];
            sum += x[k];
            max = std::max(max, x[k]);
        }
        double mean = sum / static_cast<double>(x.size());
        if (max / mean >= pmr) {
            double a = mean_rate * (pmr - 1.0) / (max - mean);
            double b = mean_rate - a * mean;  // >= 0 exactly because max/mean >= pmr
            for (std::size_t k = 0; k < x.size(); ++k) {
                trace.lambdas[k] = a * x[k] + b;
            }
            trace.validate();
            return trace;
        }
        amplitude *= 2.0;
    }
    throw ValidationError("synth_diurnal: requested PMR " + format_double(pmr) +
                          " not reachable for this shape after widening jitter 8 times");
}

WorkloadTrace rescale_pmr(const WorkloadTrace& trace, double gamma_exp) {
    trace.validate();
    if (!(gamma_exp > 0.0)) {
        throw ValidationError("rescale_pmr exponent must be positive");
    }
    double mean = trace_mean(trace);
    if (mean <= 0.0) {
        throw ValidationError("rescale_pmr is undefined on a zero-mean trace");
    }
    WorkloadTrace out = trace;
    if (gamma_exp == 1.0) {
        return out;  // c = 1 exactly
    }
    double powered_sum = 0.0;
    for (std::size_t k = 0; k < trace.lambdas.size(); ++k) {
        out.lambdas[k] = std::pow(trace.lambdas[k], gamma_exp);
        powered_sum += out.lambdas[k];
    }
    double c = mean * static_cast<double>(trace.lambdas.size()) / powered_sum;
    for (double& v : out.lambdas) {
        v *= c;
    }
    out.validate();
    return out;
}

WorkloadTrace normalize_peak(const WorkloadTrace& trace, double target_peak) {
    double peak = trace_peak(trace);
    if (peak <= 0.0) {
        throw ValidationError("normalize_peak is undefined on a zero-peak trace");
    }
    if (!(target_peak > 0.0)) {
        throw ValidationError("normalize_peak target must be positive");
    }
    WorkloadTrace out = trace;
    double scale = target_peak / peak;
    for (double& v : out.lambdas) {
        v *= scale;
    }
    out.validate();
    return out;
}

}  // namespace dcr
