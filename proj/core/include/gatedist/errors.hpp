#pragma once

#include <stdexcept>
#include <string>

namespace gatedist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input failed a structural check (range, normalization, unitarity, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Operand shapes do not match what the operation requires.
class DimensionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A value lies outside the mathematical domain (e.g. a negative eigenvalue
/// handed to a PSD square root).
class DomainError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Requested object would exceed the configured dimension cap.
class SizeError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Two gates cannot be told apart (relative gate is a multiple of identity).
class IdenticalGatesError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// An iterative method did not reach its tolerance.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Internal cross-check between two computation routes disagreed.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

}  // namespace gatedist
