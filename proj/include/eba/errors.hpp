#pragma once

#include <stdexcept>
#include <string>

namespace eba {

/// Bad input: malformed files, schema violations, out-of-range parameters.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation could not produce a result (degenerate data, empty rankings).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No overlapping non-missing features between two records.
class UndefinedDistanceError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Constant interval column (zero range) compared against a differing value.
class DegenerateRangeError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

} // namespace eba
