#pragma once

#include <stdexcept>
#include <string>

namespace hw {

/// Base of every error raised by the library. The CLI maps it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivisionByZeroError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when d < q where the permutation-pair basis is not linearly independent.
class StableRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CostGuardError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual input (permutations, words, partitions). The CLI maps it to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hw
