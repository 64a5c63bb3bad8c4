#pragma once

#include <stdexcept>
#include <string>

namespace fiblab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of an operation (bad horn index, m > n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two maps or objects cannot be composed because their sizes disagree.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// A diagram does not have the shape an operation requires (non-commuting square, non-composable span).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a check does not hold (e.g. exact mode on non-discrete input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, CLI arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace fiblab
