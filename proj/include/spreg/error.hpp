#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreg {

enum class ErrorCode {
  EmptyMap,
  DisconnectedLabel,
  EmptyInput,
  DegeneratePolygon,
  DimensionMismatch,
  SizeTooSmall,
  ShapeVanished,
  NonSquareImage,
  NonPowerOfTwoSide,
  NoEdges,
  UnsupportedFormat,
  CorruptFile,
  Overflow,
  EmptySeries,
  InvalidArgument,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Raised for every recoverable failure in the library. The CLI maps
/// InvariantViolation to exit status 3 and everything else to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spreg
