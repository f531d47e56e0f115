#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorhelix {

enum class ErrorCode {
  NonFinite,
  InvalidArgument,
  NullInput,
  OutOfDomain,
  OutOfRange,
  BadInitialFrame,
  FrameDrift,
  DegenerateCurvature,
  ZeroSlope,
  CaseConstraintViolated,
  DegenerateFrames,
  OutOfValidity,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lorhelix
