// Error taxonomy shared by all modules.
//
// ValidationError  — bad arguments, malformed input files, broken invariants.
//                    The CLI maps it to exit code 1.
// ConvergenceError — an iterative solver failed to bracket or converge within
//                    its cap; the message carries diagnostics. CLI exit code 2.
// InfeasibleCycleError — a Markov-modulated cycle time too short for the
//                    requested stationary split; carries the minimal feasible
//                    cycle time so callers can report or retry.
#pragma once

#include <stdexcept>
#include <string>

namespace dcr {

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleCycleError : public ValidationError {
public:
    InfeasibleCycleError(const std::string& msg, double min_feasible_t_slots)
        : ValidationError(msg), min_feasible_t(min_feasible_t_slots) {}

    double min_feasible_t;  // smallest cycle time (slots) that keeps both transition probabilities in (0,1]
};

}  // namespace dcr
