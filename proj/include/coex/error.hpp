#pragma once

#include <stdexcept>
#include <string>

namespace coex {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Elements of two different carriers were combined.
struct GroupMismatch : Error {
    using Error::Error;
};

/// Integer arithmetic left the representable range. Silent wraparound is
/// forbidden everywhere; inclusion-exclusion sums must be exact.
struct OverflowError : Error {
    using Error::Error;
};

/// A group element failed the 0 <= x <= u validation.
struct OutOfInterval : Error {
    using Error::Error;
};

/// Operation requires a finite integer carrier.
struct UnsupportedCarrier : Error {
    using Error::Error;
};

/// A configured cap (ground-set size, enumeration bound, time budget)
/// was exceeded.
struct SizeExceeded : Error {
    using Error::Error;
};

/// Pair (X, A) with X not a subset of A.
struct NotComparable : Error {
    using Error::Error;
};

/// The algebra failed the MV diagnostic required by the operation.
struct NotMV : Error {
    using Error::Error;
};

/// A pair of Hermitian effects fails the commutation tolerance.
struct NotCommuting : Error {
    using Error::Error;
};

/// An element of the input set is not idempotent within tolerance.
struct NotProjections : Error {
    using Error::Error;
};

/// The section handed to pushforward does not pick valid preimages.
struct InvalidSection : Error {
    using Error::Error;
};

/// Construction gated on a verified witness received a failing table.
struct UnverifiedWitness : Error {
    using Error::Error;
};

/// Malformed JSON or schema violation in an input document.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace coex
