// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "selgraph/graph.hpp"
#include "selgraph/interpolation.hpp"

namespace selgraph {

enum class GridBorder {
  /// Missing taps read the clamped pixel in that direction (replicate border).
  kClampToEdge,
  /// Missing taps read the node itself.
  kSelf,
};

/// Planar pixel grid as a selection graph: node r * width + c sits at
/// (c, -r) with unit spacing and gathers from its in-bounds 8-neighborhood.
GraphLevel build_grid_graph(std::uint32_t width, std::uint32_t height,
                            InterpolationScheme scheme = InterpolationScheme::kAngular,
                            GridBorder border = GridBorder::kClampToEdge);

}  // namespace selgraph
