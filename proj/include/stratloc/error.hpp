#pragma once

#include <stdexcept>
#include <string>

namespace stratloc {

/// Base class for all engine errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad JSON, rank mismatches,
/// inhomogeneous differentials, invalid run configuration).
struct input_error : error {
    using error::error;
};

/// A query asked for data below a series cutoff or beyond a guaranteed
/// range.  Raised instead of ever fabricating a zero.
struct truncation_error : error {
    using error::error;
};

/// A requested oracle or method does not apply to the given model
/// (e.g. no convergence cocharacter exists, no independent semistable
/// chart).  Distinct from a mathematical failure.
struct inapplicable_error : error {
    using error::error;
};

} // namespace stratloc
