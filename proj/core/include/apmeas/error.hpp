#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apmeas {

enum class ErrorCode {
  InvalidArgument,
  SupportOutsideTruncation,
  WindowOutsideTruncation,
  EmptyScanRange,
  FamilyNotInFU,
  FamilyNotInMinusU,
  ZeroFunctionInFamily,
  FamilyNotDominating,
  ScanExceedsTruncation,
  GridMismatch,
  EdgeContamination,
  NonFiniteConvolver,
  TruncationTooSmall,
  UnknownGalleryName,
  BadParams,
  ComponentSupportViolation,
  GenerationRangeTooSmall,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Edge-safety refusals: the requested value depends on data outside the
// realized region of a truncated measure.
bool is_edge_refusal(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apmeas
