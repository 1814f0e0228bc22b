#pragma once

#include <stdexcept>
#include <string>

namespace cusplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not match (matrix sizes, index ranges).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (zero vector, bad index, bad argument).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result failed a structural check (positive definiteness, determinant)
/// at the configured precision.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

/// The configured mantissa cannot resolve the requested computation.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A monotonicity or range hypothesis of a function transfer does not hold.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its node budget before certifying a minimum.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cusplab
