#include "plforge/error.hpp"

namespace plforge {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::MixedBackend: return "MixedBackend";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::OutsidePolyhedron: return "OutsidePolyhedron";
        case ErrorCode::NotASubcomplex: return "NotASubcomplex";
        case ErrorCode::DegenerateJoin: return "DegenerateJoin";
        case ErrorCode::PointOnSkeletonBoundaryOnly: return "PointOnSkeletonBoundaryOnly";
        case ErrorCode::InvalidCellComplex: return "InvalidCellComplex";
        case ErrorCode::IncompatibleCarriers: return "IncompatibleCarriers";
        case ErrorCode::NotAffineOnSimplex: return "NotAffineOnSimplex";
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::InconsistentBoundaryData: return "InconsistentBoundaryData";
        case ErrorCode::ApexNotInterior: return "ApexNotInterior";
        case ErrorCode::CarrierConditionFails: return "CarrierConditionFails";
        case ErrorCode::NotASubdivision: return "NotASubdivision";
        case ErrorCode::NoAdmissibleVertex: return "NoAdmissibleVertex";
        case ErrorCode::NotFull: return "NotFull";
        case ErrorCode::InvalidPresentation: return "InvalidPresentation";
        case ErrorCode::UndefinedOnSimplex: return "UndefinedOnSimplex";
        case ErrorCode::NotStandardPresentation: return "NotStandardPresentation";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace plforge
