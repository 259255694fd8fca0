#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gevcalc {

enum class ErrorCode {
  InvalidArgument,
  InvalidMatrix,
  NotSingleDiagonal,
  InvalidAlphabet,
  WrongGroup,
  TrivialRepresentation,
  InvalidLambda,
  TruncationTooSmall,
  EmptyWord,
  NeedLengthTwo,
  Unsupported,
  SingularAtZero,
  InvalidProfile,
  DegenerateProfile,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::NotSingleDiagonal: return "NotSingleDiagonal";
    case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::WrongGroup: return "WrongGroup";
    case ErrorCode::TrivialRepresentation: return "TrivialRepresentation";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::NeedLengthTwo: return "NeedLengthTwo";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::SingularAtZero: return "SingularAtZero";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::DegenerateProfile: return "DegenerateProfile";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gevcalc
