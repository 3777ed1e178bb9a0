#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

enum class ErrorCode {
  DomainError,
  DegenerateCurvature,
  InvalidParameter,
  SignMismatch,
  InvalidOrder,
  UnsupportedOrder,
  NotConstrained,
  UnsupportedTerm,
  PoleAtNode,
  IrrationalSqrt,
  GridTooCoarse,
  NonNormalizable,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateCurvature: return "DegenerateCurvature";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NotConstrained: return "NotConstrained";
    case ErrorCode::UnsupportedTerm: return "UnsupportedTerm";
    case ErrorCode::PoleAtNode: return "PoleAtNode";
    case ErrorCode::IrrationalSqrt: return "IrrationalSqrt";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NonNormalizable: return "NonNormalizable";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qes
