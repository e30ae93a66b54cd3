#pragma once

#include <stdexcept>
#include <string>

namespace gg {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kNotSimple,
  kNonPositiveCoordinates,
  kDuplicateVertex,
  kCollinearTripleConsecutive,
  kTooFewVertices,
  kPointOutsidePolygon,
  kIdenticalDirection,
  kDegenerateCone,
  kNoGridPointNearby,
  kInputGuardOutsidePolygon,
  kInfeasibleWitness,
  kCombinatoricsBudgetExceeded,
  kGenerationBudgetExceeded,
  kIoError,
  kRoundLimitExceeded,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                          std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gg
