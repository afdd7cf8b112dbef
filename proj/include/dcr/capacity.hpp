// Effective-capacity solvers: the constant service rate C(Dbar, eps) that
// keeps the steady-state delay above Dbar with probability at most eps, for
// each arrival family, plus numerical checkers for the capacity scaling laws.
//
// Light-tailed families (Poisson, Markov-modulated) use the exponential
// delay bound P(D > Dbar) <= K(theta*) * exp(-theta* C Dbar), where theta*
// is the largest exponent whose effective bandwidth (1/theta) log lambda(theta)
// stays below C. Poisson admits a closed form; MM is solved by outer
// bisection on C with an inner bisection for theta*(C). The heavy-tailed
// (Pareto) family uses a polynomial bound solved from an implicit equation
// with an inner one-dimensional infimum over gamma.
//
// All solvers are pure and deterministic: identical inputs give bit-identical
// outputs. Exceeding a search cap raises ConvergenceError, never a clamp.
#pragma once

#include <cstdint>
#include <vector>

#include "dcr/arrival.hpp"
#include "dcr/trace.hpp"

namespace dcr {

struct SlaSpec {
    double delay_bound = 0.2;       // Dbar, in slots
    double violation_prob = 1e-3;   // eps, in (0,1)

    void validate() const;          // throws ValidationError
};

// Convert a delay bound given in seconds to slots.
SlaSpec sla_from_seconds(double delay_bound_seconds, double violation_prob, double slot_seconds);

struct CapacitySolution {
    double capacity = 0.0;    // C, jobs/slot
    double theta_star = 0.0;  // light-tailed exponent (0 when not applicable)
    double gamma_star = 0.0;  // heavy-tailed inner optimizer (0 when not applicable)
    double residual = 0.0;    // achieved bound minus target at the returned C
    int iterations = 0;       // outer bisection steps
};

// Closed form: K = -log(eps)/(lambda*Dbar), C = K/log(1+K) * lambda,
// theta* = log(1+K).
CapacitySolution capacity_poisson(double lambda, const SlaSpec& sla);

// Same quantity found by nested bisection (exists as an independent
// cross-check of the closed form). cap_multiple bounds the search at
// cap_multiple * lambda.
CapacitySolution capacity_poisson_implicit(double lambda, const SlaSpec& sla,
                                           double cap_multiple = 1e3);

// Larger eigenvalue lambda(theta) of the MM transform matrix; the log-space
// variant never overflows and is what the solvers use internally.
double mm_log_spectral_radius(const MMModel& model, double theta);
double mm_spectral_radius(const MMModel& model, double theta);

// Effective bandwidth (1/theta) log lambda(theta); lies in [mean, lambda_h).
double mm_effective_bandwidth(const MMModel& model, double theta);

// Prefactor K(theta) >= 1: the larger of the two component ratios of the
// positive right-eigenvector of the transform matrix.
double mm_prefactor(const MMModel& model, double theta);

// Solve K(theta*) exp(-theta* C Dbar) = eps by bisection on C. The search is
// capped at cap_multiple * lambda_h; the bound's monotonicity in C is
// runtime-verified by a 32-point pre-scan of the bracket before bisecting.
CapacitySolution capacity_mm(const MMModel& model, const SlaSpec& sla,
                             double cap_multiple = 10.0);

struct HtBound {
    double value = 0.0;       // the infimum
    double gamma_star = 0.0;  // its argmin in (1, C/lambda)
};

// Heavy-tailed bound left-hand side: with a = (alpha-1)/alpha,
//   inf over gamma in (1, C/lambda) of
//     gamma^(1+a) / (C^(alpha-1) * (C - gamma*lambda) * log(gamma^a)).
// Seeded by a 64-point log-spaced grid, refined by golden-section search.
// ValidationError when C/lambda <= 1 + 1e-12 (empty range).
HtBound ht_bound_lhs(double lambda, double alpha, double c);

// Solve ht_bound_lhs(lambda, alpha, C) = eps * Dbar^(alpha-1) by bisection on
// C, to a relative residual of 1e-9. The default search cap is generous
// (1e6 * lambda) because heavy tails at small eps genuinely need capacities
// thousands of times the mean rate.
CapacitySolution capacity_ht(double lambda, double alpha, const SlaSpec& sla,
                             double cap_multiple = 1e6);

enum class Family { poisson, mm, pareto };

// Knobs for re-deriving per-frame model parameters from a frame's mean rate:
// MM uses rates (low_frac * mean, high_frac * mean) with cycle time t_slots;
// Pareto matches the mean at tail index alpha.
struct FamilyParams {
    Family family = Family::poisson;
    double alpha = 1.5;      // pareto tail index
    double t_slots = 6.0;    // mm cycle time, slots
    double low_frac = 0.5;   // mm lambda_l = low_frac * mean
    double high_frac = 2.0;  // mm lambda_h = high_frac * mean
};

Family family_from_tag(const std::string& tag);      // "poisson" | "mm" | "pareto"
std::string family_tag(Family family);

// Capacity for one frame-mean under the family's re-derived parameters.
CapacitySolution capacity_for_mean(double lambda, const FamilyParams& params, const SlaSpec& sla);

// Per-frame server floors m_k = C_k(Dbar,eps)/mu; a zero-rate frame needs no
// capacity. Solver errors are rethrown with the frame index attached.
std::vector<double> capacity_profile(const WorkloadTrace& trace, const FamilyParams& params,
                                     const SlaSpec& sla, double mu);

// --- scaling-law checkers -------------------------------------------------

struct PoissonScalingPoint {
    double delay_bound = 0.0;
    double violation_prob = 0.0;
    double x = 0.0;      // (1/Dbar) * log(1/eps)
    double capacity = 0.0;
    double ratio = 0.0;  // C * log(x) / x
};

struct PoissonScalingReport {
    std::vector<PoissonScalingPoint> points;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double band = 0.0;     // ratio_max / ratio_min
    double decades = 0.0;  // log10(x_max / x_min)
};

// Evaluates C * log(x)/x over a sweep of (Dbar, eps) pairs; every point must
// have x > 1 (the law is asymptotic; callers keep to that regime).
PoissonScalingReport check_scaling_poisson(double lambda,
                                           const std::vector<std::pair<double, double>>& sweep);

struct HtScalingReport {
    std::vector<double> log_x;       // log(1/(eps * Dbar^(alpha-1)))
    std::vector<double> log_c;       // log C*
    double slope = 0.0;              // least-squares slope, expected ~ 1/alpha
    double decades = 0.0;            // log10 span of x
};

// Least-squares slope of log C* against log(1/(eps*Dbar^(alpha-1))) over a
// sweep of (Dbar, eps) pairs; needs at least two distinct x values.
HtScalingReport check_scaling_ht(double lambda, double alpha,
                                 const std::vector<std::pair<double, double>>& sweep,
                                 double cap_multiple = 1e6);

}  // namespace dcr
