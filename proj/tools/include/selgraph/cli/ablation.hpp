// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Sampling x clustering x interpolation comparison grid with metrics that
// need no dataset or trained network.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selgraph/interpolation.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph::cli {

struct AblationOptions {
  double delta_theta = kPi / 32.0;  // 64 x 32 equirect equivalent
  std::uint64_t seed = 0;
  std::size_t k = 8;
  /// Center of the cap used for the planar-oracle metric (azimuth, polar).
  double cap_theta = 1.0;
  double cap_phi = 1.2;
  double cap_radius = 0.6;
};

struct AblationCell {
  SamplingMethod sampling = SamplingMethod::kLayering;
  SamplingMethod clustering = SamplingMethod::kLayering;
  InterpolationScheme scheme = InterpolationScheme::kAngular;

  bool ok = false;
  std::string error;
  std::size_t fine_nodes = 0;
  std::size_t coarse_nodes = 0;
  double cap_deviation = 0.0;
  double seam_score = 0.0;
  double padding_fraction = 0.0;
  double build_ms = 0.0;
};

inline const std::vector<SamplingMethod> kAblationSamplings = {
    SamplingMethod::kEquirect, SamplingMethod::kFibonacci, SamplingMethod::kIcosphere,
    SamplingMethod::kLayering};
inline const std::vector<SamplingMethod> kAblationClusterings = {
    SamplingMethod::kRandom, SamplingMethod::kEquirect, SamplingMethod::kFibonacci,
    SamplingMethod::kIcosphere, SamplingMethod::kLayering};

/// Evaluates one cell. Library errors are caught and recorded in the cell.
AblationCell run_ablation_cell(SamplingMethod sampling, SamplingMethod clustering,
                               InterpolationScheme scheme, const AblationOptions& options);

/// All 40 cells in sampling-major, clustering, interpolation order.
std::vector<AblationCell> run_ablation(const AblationOptions& options);

/// Deterministic CSV; build times are included only when `with_timing`.
std::string ablation_csv(const std::vector<AblationCell>& cells, bool with_timing);

/// Aligned text table including build times.
std::string ablation_table(const std::vector<AblationCell>& cells);

}  // namespace selgraph::cli
