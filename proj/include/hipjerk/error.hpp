#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hipjerk {

enum class ErrorCode {
  InvalidInput,
  NotSkew,
  NotRotation,
  TooShort,
  DegeneratePath,
  InvalidRecord,
  BindError,
  EmptyAcquisition,
  SendError,
  IoError,
  FormatError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotRotation: return "NotRotation";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DegeneratePath: return "DegeneratePath";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::BindError: return "BindError";
    case ErrorCode::EmptyAcquisition: return "EmptyAcquisition";
    case ErrorCode::SendError: return "SendError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hipjerk
