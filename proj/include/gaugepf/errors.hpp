#pragma once

#include <stdexcept>
#include <string>

namespace gaugepf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown node, edge or directed edge.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Malformed arguments or inputs (bad sizes, negative entries, parse errors).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration refused because the instance is too large.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Edge coefficients that admit no interior BP pair; soften the model.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a converged BP gauge was given one that is not.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaugepf
