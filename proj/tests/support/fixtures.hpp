// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Shared test scenes.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "selgraph/image.hpp"
#include "selgraph/mesh.hpp"

namespace fixture {

/// Cube [-1, 1]^3 with one square UV chart per face laid out on a 3 x 2
/// atlas. Each chart covers `chart` x `chart` texels and is surrounded by a
/// `gutter`-texel border that no face covers.
struct SeamedCube {
  selgraph::MeshSurface mesh;
  int chart = 0;
  int gutter = 0;
  int width = 0;
  int height = 0;

  /// Chart texel (row, col) that contains the 3D surface point, if any.
  std::optional<std::array<int, 2>> texel_of(const selgraph::Vec3& p) const;
  /// Surface point at the center of chart texel (row, col); nullopt in gutters.
  std::optional<selgraph::Vec3> point_of(int row, int col) const;

  /// Texture with `field` painted on every chart and `gutter_value` elsewhere.
  selgraph::Image paint(std::uint32_t channels, double gutter_value) const;

  /// Pairs of texels in different charts whose surface points sit on
  /// opposite sides of a cube edge, one texel apart. Corner texels skipped.
  std::vector<std::array<int, 4>> seam_pairs() const;
  /// Horizontally or vertically adjacent texel pairs inside one chart.
  std::vector<std::array<int, 4>> interior_pairs() const;
};

SeamedCube make_seamed_cube(int chart, int gutter);

/// Smooth, non-periodic test field on R^3, channel-dependent.
double field(const selgraph::Vec3& p, std::uint32_t channel);

}  // namespace fixture
