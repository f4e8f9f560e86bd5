#pragma once

#include <stdexcept>
#include <string>

namespace rmtwork {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside a documented precondition (non-positive spacing, bad grid, ...).
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Input object violates a structural contract (non-Hermitian matrix, mismatched dims).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain where a special function is implemented.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Solver failure or loss of accuracy that the caller cannot fix by changing inputs.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmtwork
