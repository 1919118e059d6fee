#include "pbratio/error.hpp"

namespace pbratio {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UndefinedRatio: return "UndefinedRatio";
    case ErrorCode::ScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::OracleInconsistency: return "OracleInconsistency";
  }
  return "Unknown";
}

}  // namespace pbratio
