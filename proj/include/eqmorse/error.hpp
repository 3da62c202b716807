#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqmorse {

enum class ErrorKind {
  // group_core
  ClosureExceedsCap,
  NotAPermutation,
  // burnside
  IndexMismatch,
  NotInBurnsideLattice,
  SubgroupNotContained,
  // representation
  NotOrthogonal,
  NotAHomomorphism,
  StabilizerNotClosed,
  NotInvariant,
  // poly
  DimensionMismatch,
  UnsupportedDimension,
  NotCompact,
  // morse
  OpenContour,
  SingularBoundary,
  NonIntegerTurning,
  GenericityFailure,
  BoundaryZero,
  EndpointZero,
  DegenerateZero,
  ZeroOnBoundary,
  RestrictedDegenerate,
  OrbitInconsistent,
  InconsistentStrata,
  // khovanskii
  InvalidParams,
  NoSurjectiveProjection,
  // gauss
  NonIntegerWinding,
  FieldVanishes,
  // cli
  ParseError,
  ValidationError,
  IoError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ClosureExceedsCap: return "ClosureExceedsCap";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::NotInBurnsideLattice: return "NotInBurnsideLattice";
    case ErrorKind::SubgroupNotContained: return "SubgroupNotContained";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::StabilizerNotClosed: return "StabilizerNotClosed";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotCompact: return "NotCompact";
    case ErrorKind::OpenContour: return "OpenContour";
    case ErrorKind::SingularBoundary: return "SingularBoundary";
    case ErrorKind::NonIntegerTurning: return "NonIntegerTurning";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::EndpointZero: return "EndpointZero";
    case ErrorKind::DegenerateZero: return "DegenerateZero";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::RestrictedDegenerate: return "RestrictedDegenerate";
    case ErrorKind::OrbitInconsistent: return "OrbitInconsistent";
    case ErrorKind::InconsistentStrata: return "InconsistentStrata";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NoSurjectiveProjection: return "NoSurjectiveProjection";
    case ErrorKind::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorKind::FieldVanishes: return "FieldVanishes";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Name of the mathematical hypothesis an error refutes, or empty when the
/// error is not a hypothesis violation.
inline std::string_view hypothesis_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::GenericityFailure:
      return "genericity: the field must cross the tangency locus transversally";
    case ErrorKind::BoundaryZero:
    case ErrorKind::EndpointZero:
    case ErrorKind::ZeroOnBoundary:
      return "non-degeneracy: the boundary hypersurface Q = 0 contains no zero of the field";
    case ErrorKind::DegenerateZero:
    case ErrorKind::RestrictedDegenerate:
      return "non-degeneracy: all zeros of the field are simple";
    case ErrorKind::NotInvariant:
      return "invariance: the field and Q must be invariant under the group action";
    case ErrorKind::NotCompact:
      return "compactness: X_Q = {Q >= 0} must be compact";
    case ErrorKind::SingularBoundary:
      return "smooth boundary: grad Q must not vanish on Q = 0";
    case ErrorKind::FieldVanishes:
      return "nonvanishing field: the Gauss-map identity needs an invariant field without zeros";
    case ErrorKind::NotOrthogonal:
    case ErrorKind::NotAHomomorphism:
      return "orthogonal representation: the matrices must form an orthogonal action";
    case ErrorKind::UnsupportedDimension:
      return "dimension: stratification is implemented for n <= 2";
    default:
      return {};
  }
}

/// How a failure is reported by the pipeline (drives CLI exit codes).
enum class ErrorClass { Refusal, Internal };

inline ErrorClass classify(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotInBurnsideLattice:
    case ErrorKind::IndexMismatch:
    case ErrorKind::OrbitInconsistent:
    case ErrorKind::InconsistentStrata:
    case ErrorKind::NoSurjectiveProjection:
    case ErrorKind::StabilizerNotClosed:
    case ErrorKind::NonIntegerTurning:
    case ErrorKind::NonIntegerWinding:
    case ErrorKind::OpenContour:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Refusal;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  std::string_view hypothesis() const noexcept { return hypothesis_of(kind_); }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Parse failures carry the byte/character offset into the offending text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::ParseError, "at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace eqmorse
