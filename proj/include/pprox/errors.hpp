#pragma once

#include <stdexcept>
#include <string>

namespace pprox {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments failed (dimension mismatch, gamma <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Bracket expansion never produced a sign change.
class NoSignChange : public Error {
 public:
  using Error::Error;
};

/// The scalar function returned NaN inside the bracket.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Root-finding did not meet its tolerance within max_iter.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class NestingTooDeep : public Error {
 public:
  using Error::Error;
};

}  // namespace pprox
