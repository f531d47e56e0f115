#include "lorhelix/error.hpp"

namespace lorhelix {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NullInput: return "NullInput";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadInitialFrame: return "BadInitialFrame";
    case ErrorCode::FrameDrift: return "FrameDrift";
    case ErrorCode::DegenerateCurvature: return "DegenerateCurvature";
    case ErrorCode::ZeroSlope: return "ZeroSlope";
    case ErrorCode::CaseConstraintViolated: return "CaseConstraintViolated";
    case ErrorCode::DegenerateFrames: return "DegenerateFrames";
    case ErrorCode::OutOfValidity: return "OutOfValidity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace lorhelix
