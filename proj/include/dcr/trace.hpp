// Slow time-scale workload traces: per-frame mean arrival rates.
//
// A WorkloadTrace holds one mean rate lambda_k (jobs per slot) per frame,
// plus the frame length in slots (U) and the slot duration in seconds.
// Rates are always stored in jobs-per-slot; seconds only enter when a delay
// bound given in seconds is converted at the boundary.
//
// CSV format (load/save): header line "frame;lambda", then one row per frame
// "<index>;<rate>" with indices 0..K-1 contiguous, '\n' line endings, decimal
// rates in shortest round-trip form. load(save(t)) == t bit-exactly.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcr {

struct WorkloadTrace {
    std::vector<double> lambdas;   // per-frame mean arrival rate, jobs/slot
    long long frame_slots = 600;   // U: slots per frame
    double slot_seconds = 1.0;     // duration of one slot

    // Throws ValidationError if any invariant is broken
    // (K >= 1, U >= 1, slot_seconds > 0, all rates >= 0 and finite).
    void validate() const;
};

double trace_peak(const WorkloadTrace& trace);
double trace_mean(const WorkloadTrace& trace);
// Peak-to-mean ratio; ValidationError on a zero-mean trace.
double trace_pmr(const WorkloadTrace& trace);

WorkloadTrace load_frame_trace(const std::string& path, double slot_seconds, long long frame_slots);
void save_frame_trace(const WorkloadTrace& trace, const std::string& path);

// Sinusoidal diurnal shape plus seeded log-normal jitter, renormalized by an
// affine map so the emitted trace hits (mean_rate, pmr) exactly (within
// floating-point rounding). pmr == 1 short-circuits to a constant trace.
// If the base shape cannot reach the requested PMR, the jitter amplitude is
// doubled up to 8 times before giving up with a ValidationError.
WorkloadTrace synth_diurnal(long long frames, double mean_rate, double pmr, int periods,
                            std::uint64_t seed, long long frame_slots = 600,
                            double slot_seconds = 1.0);

// Power-law reshaping lambda_k -> c * lambda_k^gamma with c chosen to keep
// the mean fixed. gamma > 1 stretches the peaks (raises PMR), gamma < 1
// compresses them. Frame ordering by rate is preserved.
WorkloadTrace rescale_pmr(const WorkloadTrace& trace, double gamma_exp);

// Scale every rate so the peak equals target_peak; PMR is unchanged.
WorkloadTrace normalize_peak(const WorkloadTrace& trace, double target_peak);

}  // namespace dcr
