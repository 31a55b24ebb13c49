#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gnskit {

enum class ErrorKind {
  NonSquare,
  NotHermitian,
  NegativeEigenvalue,
  NotPsd,
  ShapeMismatch,
  DimMismatch,
  NotAGroup,
  NotPositive,
  NonRealUnitValue,
  ZeroFunctional,
  NotEquivalent,
  SplitFailure,
  NegativeScalar,
  NegativeWeight,
  NotDominated,
  ZeroKernel,
  MonotonicityViolation,
  NotMajorized,
  NoConvergence,
  NotStarInvariant,
  InvalidRepresentation,
  InvalidHomomorphism,
  PullbackInvarianceFailure,
  AlgebraMismatch,
  IoError,
  ParseError,
  ValidationError,
  UnknownVerb,
  UnknownEntity,
  Usage,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type. The
// CLI maps the kind name straight into its report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace gnskit
