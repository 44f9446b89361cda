#pragma once

#include <stdexcept>
#include <string>

namespace starmod {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands live over different coefficient algebras.
struct DescriptorMismatchError : Error {
    explicit DescriptorMismatchError(const std::string& msg) : Error(msg) {}
};

/// Formal series truncation orders disagree.
struct TruncationMismatchError : Error {
    explicit TruncationMismatchError(const std::string& msg) : Error(msg) {}
};

/// Matrix shapes or vector dimensions disagree.
struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

/// Direction / coordinate index out of range.
struct IndexRangeError : Error {
    explicit IndexRangeError(const std::string& msg) : Error(msg) {}
};

/// Operation not defined for the given algebra or mode.
struct UnsupportedOperationError : Error {
    explicit UnsupportedOperationError(const std::string& msg) : Error(msg) {}
};

/// Order-zero part not invertible in the coefficient algebra.
struct SingularError : Error {
    explicit SingularError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition was violated.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// Module equivalence requested between deformations of different classical data.
struct NoEquivalenceError : Error {
    explicit NoEquivalenceError(const std::string& msg) : Error(msg) {}
};

/// Question falls outside the regime the engine can decide.
struct IndeterminateError : Error {
    explicit IndeterminateError(const std::string& msg) : Error(msg) {}
};

/// A result failed its own re-verification.
struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& msg) : Error(msg) {}
};

/// Malformed input file or string.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace starmod
