#pragma once

#include <stdexcept>
#include <string>

namespace opnet {

// A peer set that is not a hole-free index interval over the other agents.
struct InvalidWindow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// classify() on a horizon-limited run that has not settled.
struct UnterminatedTrajectory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |lambda_2| >= 1: no consensus-time bound exists.
struct NoBound : std::domain_error {
    using std::domain_error::domain_error;
};

struct ToleranceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnattainableVariance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BlockOverlap : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeLimitExceeded : std::length_error {
    using std::length_error::length_error;
};

}  // namespace opnet
