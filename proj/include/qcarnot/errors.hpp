#pragma once

#include <stdexcept>
#include <string>

namespace qcarnot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a removable or pole singularity (e.g. K = p).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A (p, dp/dt) pair that no positive gap can produce.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Delta_A == Delta_B: the cycle encloses no area and Delta S = 0.
class DegenerateCycleError : public Error {
 public:
  using Error::Error;
};

/// Requested isotherm duration is shorter than the bracket permits.
class InfeasibleDurationError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, root finding, integration or optimization failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcarnot
