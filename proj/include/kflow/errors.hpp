#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace kflow {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input has the wrong shape (non-square matrix, mismatched sizes, ...).
struct DimensionError : Error {
  using Error::Error;
};

/// A factorization failed or its result is untrustworthy.
struct DecompositionError : Error {
  double condition_estimate = std::numeric_limits<double>::infinity();
  DecompositionError(const std::string& msg, double cond)
      : Error(msg), condition_estimate(cond) {}
};

/// A mathematical precondition was violated (non-positive weights, point
/// outside the declared region, singular group element, ...).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace kflow
