#include "cohlab/error.hpp"

namespace cohlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kDimensionOverflow: return "DimensionOverflow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kInvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::kZeroProbabilitySymbol: return "ZeroProbabilitySymbol";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotAMeasurementOperator: return "NotAMeasurementOperator";
    case ErrorCode::kNotIncoherentOutput: return "NotIncoherentOutput";
    case ErrorCode::kNotIncoherentEnsemble: return "NotIncoherentEnsemble";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cohlab
