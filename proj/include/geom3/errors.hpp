#pragma once

#include <stdexcept>
#include <string>

namespace geom3 {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Input fails the Jacobi identity (or antisymmetry) beyond tolerance.
struct NotALieAlgebraError : Error {
  using Error::Error;
};

/// A 2-cochain used where a closed cocycle is required.
struct CocycleError : Error {
  using Error::Error;
};

/// Point outside the chart domain of a geometry.
struct ChartDomainError : Error {
  using Error::Error;
};

/// Operation outside the documented scope (e.g. weak isomorphism with betti2 > 1).
struct UnsupportedCaseError : Error {
  using Error::Error;
};

/// A measured classification quantity fell between the zero and nonzero
/// thresholds; carries the offending value in the message.
struct InconclusiveError : Error {
  using Error::Error;
};

/// Malformed argument (bad step size, degree, JSON field, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

}  // namespace geom3
