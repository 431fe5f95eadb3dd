#pragma once

#include <stdexcept>
#include <string>

namespace curvecross {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (bad degree, range, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach its requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating input file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvecross
