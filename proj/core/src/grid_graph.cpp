// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/grid_graph.hpp"

#include <algorithm>

#include "selgraph/error.hpp"

namespace selgraph {

GraphLevel build_grid_graph(std::uint32_t width, std::uint32_t height,
                            InterpolationScheme scheme, GridBorder border) {
  if (width < 1 || height < 1) fail(ErrorCode::kInvalidArgument, "grid needs width, height >= 1");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  GraphLevel level;
  level.spacing = 1.0;
  level.nodes.positions.reserve(n);
  level.nodes.normals.assign(n, Vec3(0.0, 0.0, 1.0));
  level.nodes.source_pixels.reserve(n);
  for (std::uint32_t r = 0; r < height; ++r) {
    for (std::uint32_t c = 0; c < width; ++c) {
      level.nodes.positions.emplace_back(static_cast<double>(c), -static_cast<double>(r), 0.0);
      level.nodes.source_pixels.push_back({r, c});
    }
  }

  SelectionEdges edges;
  edges.reserve(n * 12);
  const auto node = [width](std::int64_t r, std::int64_t c) {
    return static_cast<std::uint32_t>(r * width + c);
  };
  for (std::int64_t r = 0; r < height; ++r) {
    for (std::int64_t c = 0; c < width; ++c) {
      const auto i = node(r, c);
      edges.push(i, i, Selection::kCenter, 1.0);
      for (std::int64_t dr = -1; dr <= 1; ++dr) {
        for (std::int64_t dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const auto rr = r + dr;
          const auto cc = c + dc;
          if (rr < 0 || cc < 0 || rr >= height || cc >= width) continue;
          const Vec2 offset(static_cast<double>(dc), -static_cast<double>(dr));
          for (const auto& e : assign_selections(offset, scheme, level.spacing)) {
            edges.push(node(rr, cc), i, e.selection, e.weight);
          }
        }
      }
    }
  }
  edges = normalize_rows(normalize_interpolation(edges));

  PaddingSource source;
  if (border == GridBorder::kClampToEdge) {
    source = [width, height, node](std::uint32_t i, Selection s) {
      const auto step = selection_step(s);
      const std::int64_t r = i / width;
      const std::int64_t c = i % width;
      const auto rr = std::clamp<std::int64_t>(r - step[1], 0, height - 1);
      const auto cc = std::clamp<std::int64_t>(c + step[0], 0, width - 1);
      return node(rr, cc);
    };
  }
  level.edges = add_replicate_padding(edges, n, source);
  return level;
}

}  // namespace selgraph
