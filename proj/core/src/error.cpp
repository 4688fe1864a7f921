#include "boxdual/error.hpp"

namespace boxdual {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvertedBounds: return "InvertedBounds";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kDegenerateCoordinate: return "DegenerateCoordinate";
    case ErrorCode::kBoundaryPoint: return "BoundaryPoint";
    case ErrorCode::kOutOfBox: return "OutOfBox";
    case ErrorCode::kSingularNormalMatrix: return "SingularNormalMatrix";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNoFeasibleGridPoint: return "NoFeasibleGridPoint";
    case ErrorCode::kOracleNotConverged: return "OracleNotConverged";
    case ErrorCode::kBadSize: return "BadSize";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) +
                (column > 0 ? ", column " + std::to_string(column) : "") +
                ": " + message),
      line_(line),
      column_(column) {}

}  // namespace boxdual
