#pragma once

#include <stdexcept>
#include <string>

namespace asym {

/// Base class for all library errors; catchable as a family at the CLI boundary.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point fell outside a net's domain (or eps outside (0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested derivative order / feature beyond what the object supports.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// Mismatched domains, dimensions or scalar kinds.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A non-finite (NaN) value surfaced during classification.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Quadrature failed to converge to the requested tolerance.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Truncation budgets too small to answer the question; names the blocking exponent.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& msg, std::string blocking_exponent)
        : Error(msg + " (blocking exponent " + blocking_exponent + ")"),
          blocking_exponent_(std::move(blocking_exponent)) {}
    const std::string& blocking_exponent() const { return blocking_exponent_; }

private:
    std::string blocking_exponent_;
};

/// Inconsistent per-face data or a malformed cell complex.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Text input (CLI grammar, number syntax, complex files) failed to parse.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace asym
