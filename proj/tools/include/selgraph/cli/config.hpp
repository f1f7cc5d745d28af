// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Run configuration shared by every subcommand. A flat JSON object supplies
// the baseline; command-line flags override individual keys.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "selgraph/geometry.hpp"
#include "selgraph/interpolation.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph::cli {

/// Raised for configuration problems; maps to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Domain { kSphere, kMesh };

struct Config {
  Domain domain = Domain::kSphere;
  std::string method = "layering";
  std::string clustering;  // empty: reuse the sampling method
  std::string interp = "angular";

  // Explicit sampling sizes; 0 means "derive from delta_theta".
  std::uint32_t count = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t subdivisions = 0;
  bool subdivisions_set = false;
  std::uint32_t n_phi = 0;

  std::optional<double> delta_theta;  // radians
  std::optional<double> fov_deg;      // with fov_n, an alternative to delta_theta
  std::uint32_t fov_n = 0;

  std::int64_t k = 8;
  std::int64_t levels = 1;
  std::uint64_t seed = 0;
  std::uint32_t samples = 20000;  // mesh surface samples
  std::optional<Vec3> up;

  std::string input;
  std::string output;
  std::string weights;
  std::string network;
  std::string mesh;
  std::string texture;
  std::string preview;
  std::string csv;
  std::uint32_t preview_width = 256;
  bool timing = false;

  /// Throws ValidationError on unknown keys or mistyped values.
  static Config from_json(const nlohmann::json& j);

  /// Range and consistency checks that need no file access.
  void validate() const;

  SamplingMethod sampling_method() const;
  std::optional<SamplingMethod> clustering_method() const;
  InterpolationScheme scheme() const;
  bool has_explicit_size() const;
  /// Angular spacing implied by delta_theta or fov/fov_n; 0 when neither is set.
  double target_spacing() const;
  /// Sampling parameters: explicit sizes first, then the target spacing, then
  /// `fallback_spacing` when positive. Throws ValidationError otherwise.
  SamplingParams sampling_params(double fallback_spacing = 0.0) const;
};

}  // namespace selgraph::cli
