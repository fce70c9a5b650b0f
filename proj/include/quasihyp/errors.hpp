#pragma once

#include <stdexcept>
#include <string>

namespace quasihyp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ragged rows, unparsable forms, labels that do not resolve.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A subspace chain whose stages are not decreasing or do not end empty.
class InvalidChain : public Error {
 public:
  using Error::Error;
};

/// Vanishing order of the zero section.
class UndefinedOrder : public Error {
 public:
  using Error::Error;
};

/// A formula hit a zero denominator or an unbounded optimum.
class Degenerate : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed-form expression (negative beta, d <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Enumeration request beyond the supported size.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A hard precondition of a computation does not hold (e.g. a non-acyclic box).
class PreconditionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace quasihyp
