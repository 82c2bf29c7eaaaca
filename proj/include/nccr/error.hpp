#pragma once

#include <stdexcept>
#include <string>

namespace nccr {

enum class ErrorCode {
    DimensionMismatch = 1,
    Degenerate,
    NoInteriorOrigin,
    NotFullDimensional,
    NotQGorenstein,
    RaysDoNotSpan,
    NotComplete,
    NotSimplicial,
    PointOnExistingRay,
    PointOutsideSupport,
    TooManyRays,
    BoxTooSmall,
    InvalidCharacter,
    ZeroTwist,
    PicardRankTooHigh,
    NotReflexiveFaceFan,
    UnknownExample,
    Parse,
    InvalidArgument,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace nccr
