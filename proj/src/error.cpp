#include "fingeo/error.hpp"

namespace fingeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NoTableEntry: return "NoTableEntry";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::BadDivisor: return "BadDivisor";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QInB: return "QInB";
    case ErrorCode::QInH: return "QInH";
    case ErrorCode::NotHyperplane: return "NotHyperplane";
    case ErrorCode::NotASubline: return "NotASubline";
    case ErrorCode::XNotOnElement: return "XNotOnElement";
    case ErrorCode::NotBlocking: return "NotBlocking";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoSublineSecant: return "NoSublineSecant";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace fingeo
