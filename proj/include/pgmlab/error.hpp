#pragma once

#include <stdexcept>
#include <string>

namespace pgmlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input: bad spec strings, invalid tables,
/// non-prime parameters, partitions that do not cover the labels.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A dense object would exceed the configured dimension guard.
class GuardError : public InputError {
 public:
  using InputError::InputError;
};

/// Eigensolver failure or a violated numerical post-condition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgmlab
