#include "spreg/error.hpp"

namespace spreg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyMap: return "EmptyMap";
    case ErrorCode::DisconnectedLabel: return "DisconnectedLabel";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::ShapeVanished: return "ShapeVanished";
    case ErrorCode::NonSquareImage: return "NonSquareImage";
    case ErrorCode::NonPowerOfTwoSide: return "NonPowerOfTwoSide";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace spreg
