#pragma once

#include <stdexcept>
#include <string>

namespace qes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad M, bad sector, size mismatch).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to converge or hit a singular system.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qes
