// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Point sets on the unit sphere, lower-resolution resampling for clustering,
// and matching sampling density to a target angular spacing.
//
// All generators use y as the polar axis (see spherical_to_cartesian).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "selgraph/geometry.hpp"
#include "selgraph/graph.hpp"

namespace selgraph {

enum class SamplingMethod { kEquirect, kRandom, kFibonacci, kIcosphere, kLayering };

std::string_view to_string(SamplingMethod method);
/// Accepts "equirect", "random", "fibonacci" (alias "spiral"), "icosphere", "layering".
SamplingMethod parse_sampling_method(std::string_view name);

struct SamplingParams {
  SamplingMethod method = SamplingMethod::kLayering;
  std::uint32_t count = 0;         // fibonacci, random
  std::uint32_t width = 0;         // equirect
  std::uint32_t height = 0;        // equirect
  std::uint32_t subdivisions = 0;  // icosphere
  std::uint32_t n_phi = 0;         // layering
  std::uint64_t seed = 0;          // random

  bool operator==(const SamplingParams&) const = default;
};

struct SphericalPointSet {
  std::vector<Vec3> points;
  SamplingParams params;

  std::size_t size() const { return points.size(); }
};

inline constexpr std::uint32_t kMaxIcosphereSubdivisions = 8;

/// Rows at equidistant polar angles; each row holds round(2*pi*sin(phi)/d_theta)
/// evenly spaced points.
SphericalPointSet sample_layering(std::uint32_t n_phi);
/// Per-row point counts of sample_layering, north to south.
std::vector<std::uint32_t> layering_row_counts(std::uint32_t n_phi);

/// Golden-angle spiral with uniform height offsets of half a step.
SphericalPointSet sample_fibonacci(std::uint32_t count);

/// Vertices of the s-times subdivided icosahedron: 10 * 4^s + 2 points.
SphericalPointSet sample_icosphere(std::uint32_t subdivisions);

struct IcosphereMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
};
IcosphereMesh build_icosphere(std::uint32_t subdivisions);

/// One point per pixel center of a width x height lat-long raster.
SphericalPointSet sample_equirect(std::uint32_t width, std::uint32_t height);

/// Normalized Gaussian draws; reproducible for a given seed.
SphericalPointSet sample_random(std::uint32_t count, std::uint64_t seed);

SphericalPointSet sample(const SamplingParams& params);

/// Parameters for the same method at a quarter of the points.
SamplingParams coarser_params(const SamplingParams& params);

/// Parameters for `method` whose point count is as close as possible to `count`.
SamplingParams params_for_count(SamplingMethod method, std::uint32_t count, std::uint64_t seed);

/// Index of the angularly nearest point of `coarse` for every point of `fine`
/// (ties resolve to the lowest coarse index).
ClusterAssignment nearest_assignment(std::span<const Vec3> fine, std::span<const Vec3> coarse);

/// Coarse point set at a quarter of the density plus the nearest-point
/// assignment. With `clustering` unset the fine set's own method is reused,
/// otherwise the given method is sampled at a quarter of the fine count.
std::pair<SphericalPointSet, ClusterAssignment> cluster_resample(
    const SphericalPointSet& fine, std::uint32_t ratio = 4,
    std::optional<SamplingMethod> clustering = std::nullopt);

struct ResolutionSpec {
  double delta_theta = 0.0;  // radians

  static ResolutionSpec from_fov(double fov, std::uint32_t n);
};

struct ResolutionMatch {
  SamplingParams params;
  double achieved_spacing = 0.0;  // radians
};

/// Sampling parameters whose expected spacing best matches delta_theta. The
/// icosphere only offers discrete spacings; the achieved value is reported.
ResolutionMatch resolution_for(const ResolutionSpec& spec, SamplingMethod method,
                               std::uint64_t seed = 0);

/// Mean angular edge length of the s-times subdivided icosahedron.
double icosphere_edge_length(std::uint32_t subdivisions);

}  // namespace selgraph
