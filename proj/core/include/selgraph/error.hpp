// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selgraph {

enum class ErrorCode {
  kZeroGroup,
  kZeroVector,
  kNonPositiveSpacing,
  kLimitExceeded,
  kTooCoarse,
  kTooFewPoints,
  kParseError,
  kMissingUV,
  kDegenerateMesh,
  kShapeError,
  kSpecMismatch,
  kFormatError,
  kChecksumError,
  kInvalidArgument,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace selgraph
