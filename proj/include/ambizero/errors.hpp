#pragma once

#include <stdexcept>
#include <string>

namespace ambizero {

/// Malformed or out-of-contract input (bad grid, bad parameters, bad file).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A weight that should be non-negative has entries below the clipping threshold.
class NotNonNegative : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A moment required by a bound is not finite (its integrand is not resolved on the grid).
class InfiniteMoment : public std::runtime_error {
public:
    explicit InfiniteMoment(const std::string& which)
        : std::runtime_error("moment not finite: " + which), moment_(which) {}
    const std::string& moment() const noexcept { return moment_; }

private:
    std::string moment_;
};

}  // namespace ambizero
