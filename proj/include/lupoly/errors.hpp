#pragma once

#include <stdexcept>
#include <string>

namespace lupoly {

// Malformed or out-of-domain input. The CLI maps this to exit code 1.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Non-convergence or ill-conditioning of a numerical routine (exit code 2).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A library invariant was broken. Never expected on valid input (exit code 3).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lupoly
