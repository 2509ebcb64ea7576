#pragma once

#include <stdexcept>

namespace rydblock {

// Config-file problems: unknown keys, malformed numbers, violated invariants.
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures: integrator step underflow, degenerate steady states,
// grids too coarse to resolve a lineshape. CLI exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constrained optimization with an empty feasible set. CLI exit code 3.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rydblock
