#pragma once

#include <stdexcept>
#include <string>

namespace wgf {

// Invalid user input: bad config values, malformed states, profiles that
// fail their structural requirements. CLI maps this to exit code 2.
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An energy density failed a sampled hypothesis check at construction
// (h not convex/non-increasing, psi not strictly decreasing, ...).
struct hypothesis_error : input_error {
    using input_error::input_error;
};

// Numerical failure at runtime: quadrature not converging, an inner solver
// exhausting its iteration budget, a rejected step. CLI exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configuration the solver refuses by design, e.g. a custom energy whose
// psi does not vanish at infinity combined with an unbounded domain.
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wgf
