#pragma once

#include <stdexcept>

namespace coshare {

// Rejected inputs: parameter violations, malformed files, broken
// protocol preconditions.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The one plan shape that can never collaborate: crossover count equal
// to both the smallest and the largest threshold while the secrets
// differ. The crossover points alone would then pin every curve, so
// distinct secrets cannot be encoded.
struct EqualThresholdError : ValidationError {
    using ValidationError::ValidationError;
};

// Curve construction gave up: the resample budget ran out, or there was
// no filler freedom left to resample with (the crossover points
// themselves must be re-chosen).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace coshare
