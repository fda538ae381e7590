#pragma once

#include <stdexcept>
#include <string>

namespace freemult {

// Bad user input or a violated precondition on caller-supplied values.
// The CLI maps this to exit code 2.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that cannot proceed for numerical reasons: vanishing first
// moment, a logarithm leaving the right half-plane, a singular point.
// The CLI maps this to exit code 1.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace freemult
