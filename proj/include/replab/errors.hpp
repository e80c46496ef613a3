#pragma once

#include <stdexcept>
#include <string>

namespace replab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (bad parameters,
// a share outside [0,1], a non-positive step).
class DomainError : public Error {
public:
  using Error::Error;
};

// The dynamics themselves left their domain of definition.
class DynamicsError : public Error {
public:
  using Error::Error;
};

class SimplexEscape : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

// Model II step size above the largest step that keeps the simplex invariant.
class StepValidityError : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

class CriticalPointSingularity : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

class WindowError : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

class SymmetricCaseError : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

class ThresholdError : public DynamicsError {
public:
  using DynamicsError::DynamicsError;
};

}  // namespace replab
