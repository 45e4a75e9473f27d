#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphlearn {

enum class ErrorCode {
  AsymmetricMatrix,
  NegativeWeight,
  NonzeroDiagonal,
  NonFiniteValue,
  DimensionMismatch,
  InvalidArgument,
  InvalidTau,
  ZeroAtom,
  RankDeficientSupport,
  DivergenceDetected,
  EmptySignalSet,
  GenerationFailed,
  CalibrationFailed,
  EmptyList,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; code() identifies
// the failure class, what() carries the offending index or path.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphlearn
