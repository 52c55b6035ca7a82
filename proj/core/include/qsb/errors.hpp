#pragma once

#include <stdexcept>
#include <string>

namespace qsb {

/// Register widths or table domains that do not line up.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Single-word mutation whose new value equals the old one.
class DegeneratePairError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested register exceeds the configured simulation limits.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant (normalization, query-mass law) failed at runtime.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result file could not be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsb
