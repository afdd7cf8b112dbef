#include "dcr/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcr/error.hpp"
#include "dcr/text.hpp"

namespace dcr {

namespace {

constexpr int kMaxIterations = 200;

// Exponential-bound evaluations are done in log space; anything below this
// would underflow exp() anyway.
constexpr double kLogFloor = -745.0;

}  // namespace

void SlaSpec::validate() const {
    if (!(delay_bound > 0.0) || !std::isfinite(delay_bound)) {
        throw ValidationError("SLA delay bound must be positive and finite");
    }
    if (!(violation_prob > 0.0 && violation_prob < 1.0)) {
        throw ValidationError("SLA violation probability must lie strictly between 0 and 1");
    }
}

SlaSpec sla_from_seconds(double delay_bound_seconds, double violation_prob, double slot_seconds) {
    if (!(slot_seconds > 0.0)) {
        throw ValidationError("slot_seconds must be positive");
    }
    SlaSpec sla{delay_bound_seconds / slot_seconds, violation_prob};
    sla.validate();
    return sla;
}

// --- Poisson ----------------------------------------------------------------

CapacitySolution capacity_poisson(double lambda, const SlaSpec& sla) {
    sla.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("Poisson rate must be positive and finite");
    }
    double k = -std::log(sla.violation_prob) / (lambda * sla.delay_bound);
    double theta = std::log1p(k);
    CapacitySolution sol;
    sol.capacity = k / theta * lambda;
    sol.theta_star = theta;
    sol.residual = std::exp(-theta * sol.capacity * sla.delay_bound) - sla.violation_prob;
    sol.iterations = 0;
    return sol;
}

namespace {

// Effective bandwidth of a Poisson source: (lambda/theta)(e^theta - 1),
// increasing in theta with limit lambda at theta -> 0.
double poisson_effective_bandwidth(double lambda, double theta) {
    return lambda * std::expm1(theta) / theta;
}

// Largest theta whose effective bandwidth stays below c.
double poisson_theta_star(double lambda, double c) {
    if (c <= lambda) {
        return 0.0;
    }
    double hi = 1.0;
    while (poisson_effective_bandwidth(lambda, hi) <= c) {
        hi *= 2.0;
        if (hi > 700.0) {  // e^theta would overflow; bound is astronomically loose here anyway
            return 700.0;
        }
    }
    double lo = 0.0;  // limit value lambda <= c, valid without evaluating
    for (int i = 0; i < kMaxIterations && (hi - lo) > 1e-16 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (poisson_effective_bandwidth(lambda, mid) <= c) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace

CapacitySolution capacity_poisson_implicit(double lambda, const SlaSpec& sla, double cap_multiple) {
    sla.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("Poisson rate must be positive and finite");
    }
    auto bound = [&](double c) {
        double theta = poisson_theta_star(lambda, c);
        double log_bound = -theta * c * sla.delay_bound;
        return log_bound > kLogFloor ? std::exp(log_bound) : 0.0;
    };
    const double eps = sla.violation_prob;
    double lo = lambda * (1.0 + 1e-12);
    if (bound(lo) <= eps) {
        CapacitySolution sol;
        sol.capacity = lo;
        sol.theta_star = poisson_theta_star(lambda, lo);
        sol.residual = bound(lo) - eps;
        return sol;
    }
    double hi = 2.0 * lambda;
    while (bound(hi) > eps) {
        hi *= 2.0;
        if (hi > cap_multiple * lambda) {
            throw ConvergenceError("Poisson capacity search exceeded its cap of " +
                                   format_double(cap_multiple) + " * rate (rate=" +
                                   format_double(lambda) + ", bound at cap=" +
                                   format_double(bound(cap_multiple * lambda)) + ", target=" +
                                   format_double(eps) + ")");
        }
    }
    int iterations = 0;
    while (iterations < kMaxIterations && (hi - lo) > 1e-13 * hi) {
        double mid = 0.5 * (lo + hi);
        if (bound(mid) > eps) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }
    CapacitySolution sol;
    sol.capacity = hi;
    sol.theta_star = poisson_theta_star(lambda, hi);
    sol.residual = bound(hi) - eps;
    sol.iterations = iterations;
    return sol;
}

// --- Markov-modulated -------------------------------------------------------

double mm_log_spectral_radius(const MMModel& model, double theta) {
    validate(model);
    if (!(theta > 0.0)) {
        throw ValidationError("spectral radius requires theta > 0");
    }
    // Factor e^(theta*lambda_h) out of the transform matrix so nothing
    // overflows: with w = e^(-theta(lambda_h-lambda_l)),
    //   lambda(theta) = e^(theta*lambda_h) * (u + v + sqrt((u-v)^2 + 4 p_h p_l w)) / 2,
    //   u = (1-p_h) w,  v = 1-p_l.
    double log_w = -theta * (model.lambda_h - model.lambda_l);
    double w = std::exp(log_w);
    double u = (1.0 - model.p_h) * w;
    double v = 1.0 - model.p_l;
    double disc = (u - v) * (u - v) + 4.0 * model.p_h * model.p_l * w;
    double factored = 0.5 * (u + v + std::sqrt(disc));
    double log_factored;
    if (factored > 0.0) {
        log_factored = std::log(factored);
    } else {
        // p_l == 1 with w underflowed: the surviving term is sqrt(p_h p_l w).
        log_factored = 0.5 * (std::log(model.p_h * model.p_l) + log_w);
    }
    return theta * model.lambda_h + log_factored;
}

double mm_spectral_radius(const MMModel& model, double theta) {
    return std::exp(mm_log_spectral_radius(model, theta));
}

double mm_effective_bandwidth(const MMModel& model, double theta) {
    return mm_log_spectral_radius(model, theta) / theta;
}

double mm_prefactor(const MMModel& model, double theta) {
    validate(model);
    if (!(theta > 0.0)) {
        throw ValidationError("prefactor requires theta > 0");
    }
    // Eigenvector component ratio, with the same e^(theta*lambda_h) factoring
    // as the spectral radius: ratio = p_h / (factored - u).
    double w = std::exp(-theta * (model.lambda_h - model.lambda_l));
    double u = (1.0 - model.p_h) * w;
    double v = 1.0 - model.p_l;
    double disc = (u - v) * (u - v) + 4.0 * model.p_h * model.p_l * w;
    double factored = 0.5 * (u + v + std::sqrt(disc));
    double denom = factored - u;
    if (!(denom > 0.0)) {
        // Complete underflow (huge theta): the ratio tends to p_h / v.
        denom = v > 0.0 ? v : model.p_h;
    }
    double r = model.p_h / denom;
    return std::max(r, 1.0 / r);
}

namespace {

// Largest theta whose MM effective bandwidth stays below c, capped where the
// exponential bound is already astronomically small.
double mm_theta_star(const MMModel& model, double c, double delay_bound) {
    double theta_cap = std::max(4e4 / (c * delay_bound), 1e3);
    double hi = 1.0;
    while (mm_effective_bandwidth(model, hi) <= c) {
        hi *= 2.0;
        if (hi >= theta_cap) {
            return theta_cap;  // bandwidth never reaches c below the cap (c >= lambda_h)
        }
    }
    double lo = 0.0;  // limit value = stationary mean < c, valid without evaluating
    for (int i = 0; i < kMaxIterations && (hi - lo) > 1e-14 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mm_effective_bandwidth(model, mid) <= c) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

double mm_bound(const MMModel& model, double c, double delay_bound) {
    double theta = mm_theta_star(model, c, delay_bound);
    if (!(theta > 0.0)) {
        return 1.0;
    }
    double log_bound = std::log(mm_prefactor(model, theta)) - theta * c * delay_bound;
    // A violation probability never exceeds 1. Just above the stationary mean
    // the prefactor grows faster in theta than the exponent decays, so the
    // raw expression has a hump above 1 there; clamping removes it and keeps
    // the bound non-increasing in c.
    if (log_bound > 0.0) {
        return 1.0;
    }
    return log_bound > kLogFloor ? std::exp(log_bound) : 0.0;
}

}  // namespace

CapacitySolution capacity_mm(const MMModel& model, const SlaSpec& sla, double cap_multiple) {
    validate(model);
    sla.validate();
    const double eps = sla.violation_prob;
    const double mean = model_mean(model);
    const double cap = cap_multiple * model.lambda_h;

    auto finish = [&](double c, int iterations) {
        CapacitySolution sol;
        sol.capacity = c;
        sol.theta_star = mm_theta_star(model, c, sla.delay_bound);
        sol.residual = mm_bound(model, c, sla.delay_bound) - eps;
        sol.iterations = iterations;
        return sol;
    };

    double lo = mean * (1.0 + 1e-12);
    if (mm_bound(model, lo, sla.delay_bound) <= eps) {
        return finish(lo, 0);  // degenerate or extremely loose SLA: any c > mean works
    }

    double offset = std::max(mean * 1e-7, 1e-12);
    double hi = mean + offset;
    while (mm_bound(model, hi, sla.delay_bound) > eps) {
        offset *= 2.0;
        hi = mean + offset;
        if (hi >= cap) {
            if (mm_bound(model, cap, sla.delay_bound) > eps) {
                throw ConvergenceError(
                    "MM capacity search exceeded its cap of " + format_double(cap_multiple) +
                    " * lambda_h (mean=" + format_double(mean) + ", lambda_h=" +
                    format_double(model.lambda_h) + ", bound at cap=" +
                    format_double(mm_bound(model, cap, sla.delay_bound)) + ", target=" +
                    format_double(eps) + ")");
            }
            hi = cap;
            break;
        }
    }

    // The outer bisection assumes the bound is non-increasing in c; that is
    // not proved for this family, so verify it on a 32-point scan of the
    // bracket before trusting it.
    {
        double prev = mm_bound(model, lo, sla.delay_bound);
        for (int i = 1; i < 32; ++i) {
            double c = lo + (hi - lo) * static_cast<double>(i) / 31.0;
            double b = mm_bound(model, c, sla.delay_bound);
            if (b > prev * (1.0 + 1e-9) + 1e-300) {
                throw ConvergenceError("MM violation bound is not monotone in capacity near c=" +
                                       format_double(c) + "; bisection would be unsound");
            }
            prev = b;
        }
    }

    int iterations = 0;
    while (iterations < kMaxIterations && (hi - lo) > 1e-13 * hi) {
        double mid = 0.5 * (lo + hi);
        if (mm_bound(model, mid, sla.delay_bound) > eps) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }
    return finish(hi, iterations);
}

// --- Heavy-tailed (Pareto) --------------------------------------------------

namespace {

// The bracketed expression whose infimum over gamma defines the bound.
double ht_objective(double lambda, double alpha, double c, double a_exp, double gamma) {
    return std::pow(gamma, 1.0 + a_exp) /
           (std::pow(c, alpha - 1.0) * (c - gamma * lambda) * (a_exp * std::log(gamma)));
}

}  // namespace

HtBound ht_bound_lhs(double lambda, double alpha, double c) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("heavy-tailed bound requires a positive, finite rate");
    }
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw ValidationError("heavy-tailed tail index must lie strictly between 1 and 2");
    }
    double ratio = c / lambda;
    if (!(ratio > 1.0 + 1e-12)) {
        throw ValidationError("heavy-tailed bound needs c > rate (empty gamma range): c/rate = " +
                              format_double(ratio));
    }
    const double a_exp = (alpha - 1.0) / alpha;
    const double margin = std::min(1e-6, (ratio - 1.0) * 0.25);
    const double g_lo = 1.0 + margin;
    const double g_hi = ratio - margin;

    auto f = [&](double g) { return ht_objective(lambda, alpha, c, a_exp, g); };

    // 64-point log-spaced scan to seed the search (guards against landing in
    // the wrong basin), then golden-section refinement around the grid argmin.
    constexpr int kGrid = 64;
    const double log_lo = std::log(g_lo);
    const double step = (std::log(g_hi) - log_lo) / (kGrid - 1);
    int best = 0;
    double best_val = f(g_lo);
    std::vector<double> grid(kGrid);
    grid[0] = g_lo;
    for (int j = 1; j < kGrid; ++j) {
        grid[j] = std::exp(log_lo + step * j);
        double v = f(grid[j]);
        if (v < best_val) {
            best_val = v;
            best = j;
        }
    }
    double lo = grid[std::max(0, best - 1)];
    double hi = grid[std::min(kGrid - 1, best + 1)];
    const double gr = 0.6180339887498948482045868343656;  // (sqrt(5)-1)/2
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while ((hi - lo) > 1e-12 * hi) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    double g = 0.5 * (lo + hi);
    return HtBound{f(g), g};
}

CapacitySolution capacity_ht(double lambda, double alpha, const SlaSpec& sla, double cap_multiple) {
    sla.validate();
    const double target = sla.violation_prob * std::pow(sla.delay_bound, alpha - 1.0);
    const double tol = 1e-9 * target;

    double lo = lambda * (1.0 + 1e-9);
    double hi = 2.0 * lambda;
    HtBound at_hi = ht_bound_lhs(lambda, alpha, hi);
    while (at_hi.value > target) {
        hi *= 2.0;
        if (hi > cap_multiple * lambda) {
            throw ConvergenceError("heavy-tailed capacity search exceeded its cap of " +
                                   format_double(cap_multiple) + " * rate (rate=" +
                                   format_double(lambda) + ", alpha=" + format_double(alpha) +
                                   ", target=" + format_double(target) + ")");
        }
        at_hi = ht_bound_lhs(lambda, alpha, hi);
    }

    int iterations = 0;
    while (iterations < kMaxIterations && std::fabs(at_hi.value - target) > tol) {
        double mid = 0.5 * (lo + hi);
        HtBound at_mid = ht_bound_lhs(lambda, alpha, mid);
        if (at_mid.value > target) {
            lo = mid;
        } else {
            hi = mid;
            at_hi = at_mid;
        }
        ++iterations;
    }
    if (std::fabs(at_hi.value - target) > tol) {
        throw ConvergenceError("heavy-tailed capacity bisection did not reach residual " +
                               format_double(tol) + " within " + std::to_string(kMaxIterations) +
                               " iterations (achieved " +
                               format_double(at_hi.value - target) + ")");
    }
    CapacitySolution sol;
    sol.capacity = hi;
    sol.gamma_star = at_hi.gamma_star;
    sol.residual = at_hi.value - target;
    sol.iterations = iterations;
    return sol;
}

// --- per-frame profiles -----------------------------------------------------

Family family_from_tag(const std::string& tag) {
    if (tag == "poisson") return Family::poisson;
    if (tag == "mm") return Family::mm;
    if (tag == "pareto") return Family::pareto;
    throw ValidationError("unknown arrival family: '" + tag + "'");
}

std::string family_tag(Family family) {
    switch (family) {
        case Family::poisson: return "poisson";
        case Family::mm: return "mm";
        case Family::pareto: return "pareto";
    }
    throw ValidationError("unknown arrival family enum value");
}

CapacitySolution capacity_for_mean(double lambda, const FamilyParams& params, const SlaSpec& sla) {
    if (!(lambda > 0.0)) {
        throw ValidationError("capacity_for_mean requires a positive mean rate");
    }
    switch (params.family) {
        case Family::poisson:
            return capacity_poisson(lambda, sla);
        case Family::mm: {
            MMModel model = mm_from_burst_param(lambda, params.low_frac * lambda,
                                                params.high_frac * lambda, params.t_slots);
            return capacity_mm(model, sla);
        }
        case Family::pareto: {
            ParetoModel model = pareto_from_mean(lambda, params.alpha);  // validates the tail index
            return capacity_ht(lambda, model.alpha, sla);
        }
    }
    throw ValidationError("unknown arrival family enum value");
}

std::vector<double> capacity_profile(const WorkloadTrace& trace, const FamilyParams& params,
                                     const SlaSpec& sla, double mu) {
    trace.validate();
    sla.validate();
    if (!(mu > 0.0)) {
        throw ValidationError("server rate mu must be positive");
    }
    std::vector<double> floors(trace.lambdas.size(), 0.0);
    for (std::size_t k = 0; k < trace.lambdas.size(); ++k) {
        double lambda = trace.lambdas[k];
        if (lambda == 0.0) {
            continue;  // an empty frame needs no capacity
        }
        try {
            floors[k] = capacity_for_mean(lambda, params, sla).capacity / mu;
        } catch (const InfeasibleCycleError& e) {
            throw InfeasibleCycleError("frame " + std::to_string(k) + ": " + e.what(),
                                       e.min_feasible_t);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("frame " + std::to_string(k) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("frame " + std::to_string(k) + ": " + e.what());
        }
    }
    return floors;
}

// --- scaling-law checkers ---------------------------------------------------

PoissonScalingReport check_scaling_poisson(double lambda,
                                           const std::vector<std::pair<double, double>>& sweep) {
    if (sweep.size() < 2) {
        throw ValidationError("scaling check needs at least two sweep points");
    }
    PoissonScalingReport report;
    double x_min = 0.0;
    double x_max = 0.0;
    for (const auto& [delay_bound, eps] : sweep) {
        SlaSpec sla{delay_bound, eps};
        sla.validate();
        double x = std::log(1.0 / eps) / delay_bound;
        if (!(x > 1.0)) {
            throw ValidationError("scaling check is asymptotic: every point needs x = log(1/eps)/delay > 1, got x=" +
                                  format_double(x));
        }
        PoissonScalingPoint point;
        point.delay_bound = delay_bound;
        point.violation_prob = eps;
        point.x = x;
        point.capacity = capacity_poisson(lambda, sla).capacity;
        point.ratio = point.capacity * std::log(x) / x;
        if (report.points.empty()) {
            report.ratio_min = report.ratio_max = point.ratio;
            x_min = x_max = x;
        } else {
            report.ratio_min = std::min(report.ratio_min, point.ratio);
            report.ratio_max = std::max(report.ratio_max, point.ratio);
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
        report.points.push_back(point);
    }
    report.band = report.ratio_max / report.ratio_min;
    report.decades = std::log10(x_max / x_min);
    return report;
}

HtScalingReport check_scaling_ht(double lambda, double alpha,
                                 const std::vector<std::pair<double, double>>& sweep,
                                 double cap_multiple) {
    if (sweep.size() < 2) {
        throw ValidationError("scaling check needs at least two sweep points (slope undefined)");
    }
    HtScalingReport report;
    for (const auto& [delay_bound, eps] : sweep) {
        SlaSpec sla{delay_bound, eps};
        double c = capacity_ht(lambda, alpha, sla, cap_multiple).capacity;
        report.log_x.push_back(std::log(1.0 / (eps * std::pow(delay_bound, alpha - 1.0))));
        report.log_c.push_back(std::log(c));
    }
    double x_lo = *std::min_element(report.log_x.begin(), report.log_x.end());
    double x_hi = *std::max_element(report.log_x.begin(), report.log_x.end());
    if (!(x_hi > x_lo)) {
        throw ValidationError("scaling check sweep has no spread in x (slope undefined)");
    }
    // Least-squares slope of log_c on log_x.
    double n = static_cast<double>(report.log_x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < report.log_x.size(); ++i) {
        sx += report.log_x[i];
        sy += report.log_c[i];
        sxx += report.log_x[i] * report.log_x[i];
        sxy += report.log_x[i] * report.log_c[i];
    }
    report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report.decades = (x_hi - x_lo) / std::log(10.0);
    return report;
}

}  // namespace dcr
