#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, non-finite entries, invalid weights.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The input is well formed but an operation's precondition does not hold
// (e.g. a construction that needs a non-spanning head family).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the atom count exceeds the cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace framelab
