#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetamoment {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the supported region of an operation.
struct DomainError : Error {
  using Error::Error;
};

// zeta(s) requested within the guard radius of the pole at s = 1.
struct PoleAtOne : DomainError {
  PoleAtOne() : DomainError("zeta: argument within 1e-12 of the pole at s = 1") {}
};

// An adaptive panel could not reach the requested tolerance within budget.
struct NonConvergence : Error {
  explicit NonConvergence(const std::string& what, long panel = -1)
      : Error(what), panel_index(panel) {}
  long panel_index;
};

// z_oracle called on a sigma boundary (0 or 1) that has no defined value.
struct UnsupportedSigma : DomainError {
  using DomainError::DomainError;
};

// identity_rhs called outside the stated validity region of the identity.
struct RegimeViolation : DomainError {
  using DomainError::DomainError;
};

// period_estimate needs at least 4 asymptote crossings.
struct InsufficientCrossings : Error {
  using Error::Error;
};

// correlate over a segment where a variance underflows.
struct DegenerateSegment : Error {
  using Error::Error;
};

// Cache file exists but its header does not match the request.
struct IncompatibleCache : Error {
  using Error::Error;
};

}  // namespace zetamoment
