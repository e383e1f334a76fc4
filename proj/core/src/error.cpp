#include "apmeas/error.hpp"

namespace apmeas {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SupportOutsideTruncation: return "SupportOutsideTruncation";
    case ErrorCode::WindowOutsideTruncation: return "WindowOutsideTruncation";
    case ErrorCode::EmptyScanRange: return "EmptyScanRange";
    case ErrorCode::FamilyNotInFU: return "FamilyNotInFU";
    case ErrorCode::FamilyNotInMinusU: return "FamilyNotInMinusU";
    case ErrorCode::ZeroFunctionInFamily: return "ZeroFunctionInFamily";
    case ErrorCode::FamilyNotDominating: return "FamilyNotDominating";
    case ErrorCode::ScanExceedsTruncation: return "ScanExceedsTruncation";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EdgeContamination: return "EdgeContamination";
    case ErrorCode::NonFiniteConvolver: return "NonFiniteConvolver";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::UnknownGalleryName: return "UnknownGalleryName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ComponentSupportViolation: return "ComponentSupportViolation";
    case ErrorCode::GenerationRangeTooSmall: return "GenerationRangeTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_edge_refusal(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SupportOutsideTruncation:
    case ErrorCode::WindowOutsideTruncation:
    case ErrorCode::EmptyScanRange:
    case ErrorCode::ScanExceedsTruncation:
    case ErrorCode::EdgeContamination:
    case ErrorCode::TruncationTooSmall:
      return true;
    default:
      return false;
  }
}

}  // namespace apmeas
