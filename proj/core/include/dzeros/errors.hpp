#pragma once

#include <stdexcept>
#include <string>

namespace dzeros {

// Argument outside the mathematical domain of an operation (s <= 1, sigma <= 1/2, |rho| >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested accuracy cannot be certified within the configured budget.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series reciprocal of a zero leading coefficient and similar algebraic degeneracies.
class DegeneracyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Request exceeds a hard resource cap (e.g. sieve limit).
class ResourceError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace dzeros
