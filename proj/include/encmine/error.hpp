#pragma once

#include <stdexcept>
#include <string>

namespace encmine {

/// Base class for all pipeline errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
struct IoError : Error {
    using Error::Error;
};

/// Bearing requested between coincident points.
struct DegenerateBearing : Error {
    using Error::Error;
};

/// A trip is too short for the requested derivation.
struct InsufficientSamples : Error {
    using Error::Error;
};

/// sweep_match received trips whose start times decrease.
struct UnsortedInput : Error {
    using Error::Error;
};

/// DTW requested on an empty series.
struct EmptySeries : Error {
    using Error::Error;
};

/// Cluster count outside [1, n].
struct InvalidK : Error {
    using Error::Error;
};

/// Distance matrix is not square/symmetric/non-negative/zero-diagonal.
struct InvalidMatrix : Error {
    using Error::Error;
};

/// An encounter has no scenario label in the supplied label set.
struct MissingLabel : Error {
    using Error::Error;
};

}  // namespace encmine
