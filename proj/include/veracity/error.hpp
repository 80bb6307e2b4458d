#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace veracity {

enum class ErrorCode {
  ArityMismatch,
  ActorMismatch,
  EvidenceShapeMismatch,
  ClaimMismatch,
  ContextError,
  NotAnAssumption,
  FreshnessViolation,
  UnknownTrustEdge,
  CaptureError,
  ConclusionMismatch,
  WeightOutOfRange,
  ParseError,
  InvalidTree,
  FuelExhausted,
  BrokenPath,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// callers (CLI exit codes, HTTP problem documents, check reports) can
// dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace veracity
