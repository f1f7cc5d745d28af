// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/error.hpp"

namespace selgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroGroup: return "ZeroGroup";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNonPositiveSpacing: return "NonPositiveSpacing";
    case ErrorCode::kLimitExceeded: return "LimitExceeded";
    case ErrorCode::kTooCoarse: return "TooCoarse";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingUV: return "MissingUV";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kChecksumError: return "ChecksumError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace selgraph
