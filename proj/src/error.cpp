#include <nccr/error.hpp>

namespace nccr {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NoInteriorOrigin: return "NoInteriorOrigin";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotQGorenstein: return "NotQGorenstein";
    case ErrorCode::RaysDoNotSpan: return "RaysDoNotSpan";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::PointOnExistingRay: return "PointOnExistingRay";
    case ErrorCode::PointOutsideSupport: return "PointOutsideSupport";
    case ErrorCode::TooManyRays: return "TooManyRays";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::ZeroTwist: return "ZeroTwist";
    case ErrorCode::PicardRankTooHigh: return "PicardRankTooHigh";
    case ErrorCode::NotReflexiveFaceFan: return "NotReflexiveFaceFan";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace nccr
