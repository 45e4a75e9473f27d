#include "graphlearn/error.hpp"

namespace graphlearn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::ZeroAtom: return "ZeroAtom";
    case ErrorCode::RankDeficientSupport: return "RankDeficientSupport";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
    case ErrorCode::EmptySignalSet: return "EmptySignalSet";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::CalibrationFailed: return "CalibrationFailed";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace graphlearn
