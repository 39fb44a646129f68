#pragma once

#include <stdexcept>
#include <string>

namespace plforge {

enum class ErrorCode {
    DivisionByZero,
    MixedBackend,
    DegreeOverflow,
    FieldMismatch,
    UnknownVertex,
    OutsidePolyhedron,
    NotASubcomplex,
    DegenerateJoin,
    PointOnSkeletonBoundaryOnly,
    InvalidCellComplex,
    IncompatibleCarriers,
    NotAffineOnSimplex,
    OutsideDomain,
    InconsistentBoundaryData,
    ApexNotInterior,
    CarrierConditionFails,
    NotASubdivision,
    NoAdmissibleVertex,
    NotFull,
    InvalidPresentation,
    UndefinedOnSimplex,
    NotStandardPresentation,
    SyntaxError,
    ValidationError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace plforge
