#pragma once

#include <stdexcept>
#include <string>

namespace broadwell {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (bad index, bad step, grid too small).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A coordinate fell outside the space-time box beyond tolerance.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Boundary/initial data or an input field is unusable (NaN, failing sampler,
/// missing derivatives, incompatible data).
class DataError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Iteration produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or data specification document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace broadwell
