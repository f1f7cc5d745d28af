// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Spherical selection graphs. Every node gets a tangent frame built by
// Gram-Schmidt against an approximate up-vector; neighbor offsets are rotated
// into that frame, the normal component is dropped, and the remaining 2D
// offset is split between kernel taps by the chosen interpolation scheme.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selgraph/features.hpp"
#include "selgraph/geometry.hpp"
#include "selgraph/graph.hpp"
#include "selgraph/image.hpp"
#include "selgraph/interpolation.hpp"
#include "selgraph/knn.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph {

inline const Vec3 kDefaultUp{0.0, 1.0, 0.0};
inline const Vec3 kFallbackUp{0.0, 0.0, 1.0};

/// Right-handed orthonormal tangent frame; z_hat is the surface normal.
struct LocalFrame {
  Vec3 x_hat;
  Vec3 y_hat;
  Vec3 z_hat;

  /// Rows (x_hat, y_hat, z_hat): maps world offsets into the frame.
  Mat3 rotation() const;
  /// Rotated offset with the normal component dropped.
  Vec2 project(const Vec3& offset) const;
};

/// x_hat = normalize(up x normal), y_hat = normal x x_hat. When up is (nearly)
/// parallel to the normal, (0,0,1) is used as the up-vector instead.
LocalFrame local_frame(const Vec3& normal, const Vec3& up = kDefaultUp);

/// Kernel taps for the edge from x_i to x_j in x_i's frame. Offsets shorter
/// than 0.1 * spacing collapse onto the center tap.
InterpolationResult spherical_selection(const Vec3& xi, const Vec3& xj, const LocalFrame& frame_i,
                                        InterpolationScheme scheme, double spacing);

/// Selection edges for one level: a center self-edge per node, interpolated
/// edges to each listed neighbor, both normalizations, then replicate padding.
/// `ups` holds one up-vector per node, or a single shared one.
SelectionEdges build_selection_edges(std::span<const Vec3> positions,
                                     std::span<const Vec3> normals,
                                     const std::vector<std::vector<Neighbor>>& neighbors,
                                     std::span<const Vec3> ups, InterpolationScheme scheme,
                                     double spacing);

struct SphereGraphOptions {
  std::size_t k = 8;
  InterpolationScheme scheme = InterpolationScheme::kAngular;
  std::size_t levels = 1;
  /// Method used to resample coarser levels; unset reuses the sampling method.
  std::optional<SamplingMethod> clustering;
};

SphereGraphOptions default_sphere_options();

/// Builds the pyramid and also returns the point set of every level.
struct SpherePyramid {
  GraphPyramid pyramid;
  std::vector<SphericalPointSet> point_sets;
};

SpherePyramid build_sphere_pyramid(const SphericalPointSet& points,
                                   const SphereGraphOptions& options);

GraphPyramid build_sphere_graph(const SphericalPointSet& points, const SphereGraphOptions& options);

/// Bilinear fetch of the lat-long image at every point (columns wrap at the
/// azimuth seam, rows clamp at the poles).
FeatureMatrix image_to_features(const EquirectImage& image, std::span<const Vec3> points);

/// Renders features back to a lat-long raster: each pixel direction blends its
/// `neighbors` angularly nearest points with inverse-distance weights.
EquirectImage features_to_image(const FeatureMatrix& features, std::span<const Vec3> points,
                                std::uint32_t width, std::uint32_t height,
                                std::size_t neighbors = 3);

}  // namespace selgraph
