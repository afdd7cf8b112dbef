// Deterministic random sampling.
//
// The distributions are implemented by hand on top of std::mt19937_64 because
// the standard library's distribution classes use unspecified algorithms:
// the same seed can produce different sample paths on different standard
// libraries. Everything here is pinned, so a (model, seed) pair identifies a
// sample path exactly, and reseeding reproduces it bit-for-bit.
//
// Poisson sampling uses Hormann's PTRS transformed-rejection method for
// mean >= 10 and sequential inversion below; both return integer-valued
// doubles. Normal variates come from Box-Muller (one cached per pair).
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dcr {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0,1): 53 random mantissa bits.
    double u01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]: strictly positive, safe as a log/pow argument.
    double u01_pos() {
        return 1.0 - u01();
    }

    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = u01_pos();
        double u2 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;  // 2*pi
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Poisson count with the given mean, returned as an integer-valued double.
    double poisson(double mean) {
        if (mean < 10.0) {
            return poisson_inversion(mean);
        }
        return poisson_ptrs(mean);
    }

    // Pareto job size: X = b * u^(-1/alpha), u uniform on (0,1]. Support [b, inf).
    double pareto(double alpha, double b) {
        return b * std::pow(u01_pos(), -1.0 / alpha);
    }

private:
    double poisson_inversion(double mean) {
        // Sequential search over the CDF; fine for small means.
        double p = std::exp(-mean);
        double cum = p;
        double u = u01();
        double k = 0.0;
        while (u > cum && k < 1000.0) {
            k += 1.0;
            p *= mean / k;
            cum += p;
        }
        return k;
    }

    double poisson_ptrs(double mean) {
        // Hormann (1993), algorithm PTRS. Constants from the paper.
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            double u = u01() - 0.5;
            double v = u01();
            double us = 0.5 - std::fabs(u);
            double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) {
                return k;
            }
            if (k < 0.0 || (us < 0.013 && v > us)) {
                continue;
            }
            double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
            double rhs = k * loglam - mean - std::lgamma(k + 1.0);
            if (lhs <= rhs) {
                return k;
            }
        }
    }

    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace dcr
