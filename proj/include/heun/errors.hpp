#pragma once

#include <stdexcept>
#include <string>

namespace heun {

/// Argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument within the pole-detection tolerance of a lattice pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Recurrence or transform whose parameters hit a nonpositive integer
/// (e.g. γ ∈ {0,−1,−2,...}); logarithmic cases are not handled.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A zero of Ψ on the integration path of a finite-gap integral.
class TurningPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or iteration that did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold exactly did not (nonzero remainder,
/// unexpected nullspace dimension, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace heun
