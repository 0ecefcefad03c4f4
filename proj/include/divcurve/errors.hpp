#pragma once

#include <stdexcept>
#include <string>

namespace divcurve {

// Error taxonomy. The CLI maps these onto exit codes: anything usage- or
// input-shaped exits 2, numeric failures exit 3, I/O failures exit 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (carries a line number where applicable).
struct ParseError : Error {
    using Error::Error;
};

// A contract violation on otherwise well-formed data.
struct ValidationError : Error {
    using Error::Error;
};

// Cross-file inconsistency in multi-file dataset formats.
struct IntegrityError : ValidationError {
    using ValidationError::ValidationError;
};

// A value outside its admissible range.
struct RangeError : Error {
    using Error::Error;
};

// An operation invoked with an incompatible configuration
// (e.g. feature metric on a featureless graph).
struct ConfigError : Error {
    using Error::Error;
};

// Instance too large for an intentionally bounded algorithm.
struct SizeLimitError : Error {
    using Error::Error;
};

// Numerical failure (eigensolver non-convergence, non-positive denominator).
struct NumericError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Cross-validation fold construction impossible for the given data.
struct FoldError : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace divcurve
