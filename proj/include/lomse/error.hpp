#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lomse {

enum class ErrorCode {
  InvalidFamily,
  InvalidDegree,
  InvalidRange,
  NotOnSphere,
  DomainTooShort,
  StepSizeUnderflow,
  NonFiniteState,
  InsufficientEvents,
  NotConverged,
  WrongCase,
  WrongType,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::DomainTooShort: return "DomainTooShort";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::InsufficientEvents: return "InsufficientEvents";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::WrongType: return "WrongType";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lomse
