#pragma once

#include <stdexcept>

namespace logitkit {

// Malformed input: bad files, schema mismatches, domain violations.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: singular systems, degenerate statistics.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace logitkit
