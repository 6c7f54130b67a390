#ifndef EVOCHAIN_ERRORS_HPP
#define EVOCHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace evochain {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values (bad epsilon, negative sizes, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// Malformed or inconsistent input files.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Request cannot be served at this size/structure (state cap, overflow).
struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

// Chain fails the ergodicity prerequisites; carries what broke.
struct StructuralError : InfeasibleError {
    StructuralError(const std::string& msg, std::vector<int> unreachable_states, int period)
        : InfeasibleError(msg), unreachable(std::move(unreachable_states)), period(period) {}
    std::vector<int> unreachable;  // states not strongly connected to state 0
    int period;                    // gcd period of the support graph (1 if aperiodic)
};

// Iteration hit its cap; carries the last iterate for diagnostics.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, std::vector<double> last_iterate, long steps)
        : Error(msg), last(std::move(last_iterate)), steps(steps) {}
    std::vector<double> last;
    long steps;
};

}  // namespace evochain

#endif
