#pragma once

#include <stdexcept>
#include <string>

namespace diatomic {

/// Input outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed (overflow, non-convergence, divergent integral).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The eigensolver could not bracket a state with the requested node count.
class NoSuchStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Normalization requested in a convention that is not defined for the state.
class UnsupportedConventionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

} // namespace diatomic
