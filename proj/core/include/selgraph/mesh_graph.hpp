// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Selection graphs on textured triangle meshes. The surface is sampled at
// random, neighbors come from 3D KNN with a fold guard on the face normals, and
// frames use one up-vector for the whole build.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "selgraph/features.hpp"
#include "selgraph/graph.hpp"
#include "selgraph/image.hpp"
#include "selgraph/interpolation.hpp"
#include "selgraph/mesh.hpp"

namespace selgraph {

struct SurfaceSample {
  Vec3 position;
  Vec3 normal;
  Vec2 uv;
  std::uint32_t face = 0;
};

/// Area-weighted face choice, then a uniform point inside the face via
/// square-root barycentric sampling. Deterministic per seed.
std::vector<SurfaceSample> sample_surface(const MeshSurface& mesh, std::uint32_t count,
                                          std::uint64_t seed);

/// Edges between samples whose normals differ by more than 60 degrees are
/// dropped before selections are assigned.
inline constexpr double kFoldCosine = 0.5;

struct MeshGraphOptions {
  std::size_t k = 8;
  InterpolationScheme scheme = InterpolationScheme::kAngular;
  std::size_t levels = 1;
  std::optional<Vec3> up;  // unset: one seeded random unit vector per build
  std::uint64_t seed = 0;
};

struct MeshPyramid {
  GraphPyramid pyramid;
  std::vector<std::vector<SurfaceSample>> samples;  // per level
  Vec3 up;
};

/// Level 0 uses `samples`; level l > 0 resamples the surface with a quarter of
/// the previous count (seed + l) and assigns every finer sample to its
/// nearest coarse sample in 3D.
MeshPyramid build_mesh_pyramid(const MeshSurface& mesh, const std::vector<SurfaceSample>& samples,
                               const MeshGraphOptions& options);

/// One level built directly from samples (no coarser levels).
GraphLevel build_mesh_level(const std::vector<SurfaceSample>& samples, std::size_t k,
                            InterpolationScheme scheme, const Vec3& up);

/// Draws the build's up-vector: a normalized Gaussian triple from `seed`.
Vec3 random_up_vector(std::uint64_t seed);

/// Bilinear texture fetch at each sample's UV (x = u * W, y = (1 - v) * H,
/// edges clamp). Throws kMissingUV when the mesh carries no UVs.
FeatureMatrix texture_to_features(const Image& texture, const MeshSurface& mesh,
                                  const std::vector<SurfaceSample>& samples);

/// Rasterizes every face in UV space. Each covered texel is mapped to its 3D
/// surface point and blended from the `neighbors` nearest samples by inverse
/// distance. The first face covering a texel wins; texels no face covers keep
/// the value from `original`.
Image features_to_texture(const FeatureMatrix& features, const std::vector<SurfaceSample>& samples,
                          const MeshSurface& mesh, const Image& original,
                          std::size_t neighbors = 3);

/// Per-texel face coverage of the UV layout (-1 where uncovered), row-major.
std::vector<std::int32_t> texel_faces(const MeshSurface& mesh, std::uint32_t width,
                                      std::uint32_t height);

}  // namespace selgraph
