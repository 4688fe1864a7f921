#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace boxdual {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kInvertedBounds,
  kNonFiniteEntry,
  kDegenerateCoordinate,
  kBoundaryPoint,
  kOutOfBox,
  kSingularNormalMatrix,
  kNotConverged,
  kTooLarge,
  kNoFeasibleGridPoint,
  kOracleNotConverged,
  kBadSize,
  kIndexOutOfRange,
  kParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Problem-file syntax error. Line and column are 1-based; column 0 means the
/// error concerns the whole line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace boxdual
