// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "selgraph/geometry.hpp"

namespace selgraph {

struct Neighbor {
  std::uint32_t index;
  double dist2;  // squared Euclidean distance
};

/// Static 3D kd-tree. Query results are ordered by (distance, index), so equal
/// distances resolve to the lowest index and results are reproducible.
class KdTree {
 public:
  explicit KdTree(std::span<const Vec3> points);

  std::size_t size() const { return points_.size(); }

  /// Up to k nearest points to `query`, skipping `exclude` when set.
  std::vector<Neighbor> knn(const Vec3& query, std::size_t k,
                            std::optional<std::uint32_t> exclude = std::nullopt) const;

  Neighbor nearest(const Vec3& query) const;

 private:
  struct Node {
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t axis = 0;
    double split = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, int depth);

  std::vector<Vec3> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

/// k-nearest neighbor lists for every point of `points` (self excluded).
std::vector<std::vector<Neighbor>> knn_all(std::span<const Vec3> points, std::size_t k);

/// Mean distance from each point to its nearest other point.
double mean_nearest_distance(std::span<const Vec3> points);

}  // namespace selgraph
