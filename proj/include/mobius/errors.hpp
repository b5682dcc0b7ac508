#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad shapes, unknown names, broken
/// functoriality, ...). The CLI maps all of these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CycleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownElement : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotComparable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BackendMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotComposable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotAComplex : public Error {
 public:
  using Error::Error;
};

class FunctorialityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotRelativePair : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class MonotonicityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class AdjunctionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotALattice : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotDistributive : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NoMaximum : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DiagonalInterval : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace mobius
