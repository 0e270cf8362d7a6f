#pragma once

#include <stdexcept>
#include <string>

namespace wishart {

// Malformed or out-of-range input. The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated hypothesis of a bound/formula fails for the given arguments.
// Bounds are never evaluated outside their domain; callers get this instead.
struct HypothesisError : InputError {
    using InputError::InputError;
};

// A configured size cap was exceeded. The CLI maps this to exit code 3.
struct SizeCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative numeric routine did not reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wishart
