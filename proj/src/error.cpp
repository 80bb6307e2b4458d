#include "veracity/error.hpp"

namespace veracity {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ActorMismatch: return "ActorMismatch";
    case ErrorCode::EvidenceShapeMismatch: return "EvidenceShapeMismatch";
    case ErrorCode::ClaimMismatch: return "ClaimMismatch";
    case ErrorCode::ContextError: return "ContextError";
    case ErrorCode::NotAnAssumption: return "NotAnAssumption";
    case ErrorCode::FreshnessViolation: return "FreshnessViolation";
    case ErrorCode::UnknownTrustEdge: return "UnknownTrustEdge";
    case ErrorCode::CaptureError: return "CaptureError";
    case ErrorCode::ConclusionMismatch: return "ConclusionMismatch";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::BrokenPath: return "BrokenPath";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorCode::ParseError,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace veracity
