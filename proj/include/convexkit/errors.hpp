#pragma once

#include <stdexcept>
#include <string>

namespace convexkit {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different ambient dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A type invariant does not hold for the given data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A numerical routine hit its iteration limit or could not verify its
// optimality conditions. Distinct from a negative answer.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

// Malformed input text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace convexkit
