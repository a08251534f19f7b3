#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fingeo {

enum class ErrorCode {
  NotPrime,
  ReduciblePolynomial,
  NoTableEntry,
  ZeroInverse,
  SpecMismatch,
  BadDivisor,
  RangeError,
  EmptyInput,
  DimensionMismatch,
  QInB,
  QInH,
  NotHyperplane,
  NotASubline,
  XNotOnElement,
  NotBlocking,
  NotApplicable,
  GapViolation,
  NotFound,
  BadParams,
  TooLarge,
  NoSublineSecant,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the CLI
// maps them to exit codes and a one-line "error: <Code>: <detail>" message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fingeo
