#pragma once

#include <stdexcept>
#include <string>

namespace proxpair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of iterations before its certificate closed.
class SolverBudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// A computed object failed its own verification step.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(long a, long b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) +
                            " does not match " + std::to_string(b));
  }
}

}  // namespace proxpair
