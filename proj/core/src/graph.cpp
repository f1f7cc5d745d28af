// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "selgraph/error.hpp"
#include "selgraph/log.hpp"

namespace selgraph {
namespace {

constexpr double kUnitTolerance = 1e-6;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::size_t max_dst_plus_one(const SelectionEdges& edges) {
  std::size_t n = 0;
  for (auto d : edges.dst) n = std::max<std::size_t>(n, d + 1);
  return n;
}

SelectionEdges copy_subset(const SelectionEdges& edges, const std::vector<std::size_t>& keep,
                           const std::vector<double>& new_weights) {
  SelectionEdges out;
  out.reserve(keep.size());
  std::optional<std::size_t> padding_begin;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const std::size_t e = keep[k];
    if (edges.padding_begin && !padding_begin && e >= *edges.padding_begin) {
      padding_begin = out.size();
    }
    out.src.push_back(edges.src[e]);
    out.dst.push_back(edges.dst[e]);
    out.selection.push_back(edges.selection[e]);
    out.weight.push_back(new_weights[k]);
  }
  if (edges.padding_begin && !padding_begin) padding_begin = out.size();
  out.padding_begin = padding_begin;
  return out;
}

}  // namespace

Vec2 selection_direction(Selection s) {
  const auto step = selection_step(s);
  Vec2 v(step[0], step[1]);
  const double n = v.norm();
  return n > 0.0 ? Vec2(v / n) : v;
}

std::array<int, 2> selection_step(Selection s) {
  switch (s) {
    case Selection::kCenter: return {0, 0};
    case Selection::kE: return {1, 0};
    case Selection::kNE: return {1, 1};
    case Selection::kN: return {0, 1};
    case Selection::kNW: return {-1, 1};
    case Selection::kW: return {-1, 0};
    case Selection::kSW: return {-1, -1};
    case Selection::kS: return {0, -1};
    case Selection::kSE: return {1, -1};
  }
  return {0, 0};
}

void NodeSet::validate(bool on_unit_sphere) const {
  const std::size_t n = positions.size();
  if (normals.size() != n || (!uvs.empty() && uvs.size() != n) ||
      (!source_pixels.empty() && source_pixels.size() != n)) {
    fail(ErrorCode::kShapeError, "node arrays have mismatched lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(normals[i].norm() - 1.0) > kUnitTolerance) {
      fail(ErrorCode::kInvalidArgument, "normal " + std::to_string(i) + " is not unit length");
    }
    if (on_unit_sphere && std::abs(positions[i].norm() - 1.0) > kUnitTolerance) {
      fail(ErrorCode::kInvalidArgument, "position " + std::to_string(i) + " is off the unit sphere");
    }
  }
}

void SelectionEdges::push(std::uint32_t from, std::uint32_t to, Selection s, double w) {
  src.push_back(from);
  dst.push_back(to);
  selection.push_back(index_of(s));
  weight.push_back(w);
}

void SelectionEdges::reserve(std::size_t n) {
  src.reserve(n);
  dst.reserve(n);
  selection.reserve(n);
  weight.reserve(n);
}

void SelectionEdges::validate(std::size_t node_count) const {
  const std::size_t n = src.size();
  if (dst.size() != n || selection.size() != n || weight.size() != n) {
    fail(ErrorCode::kShapeError, "edge arrays have mismatched lengths");
  }
  if (padding_begin && *padding_begin > n) {
    fail(ErrorCode::kShapeError, "padding offset past the end of the edge list");
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (src[e] >= node_count || dst[e] >= node_count) {
      fail(ErrorCode::kShapeError, "edge " + std::to_string(e) + " references a missing node");
    }
    if (selection[e] >= kSelectionCount) {
      fail(ErrorCode::kShapeError, "edge " + std::to_string(e) + " has selection out of range");
    }
    if (!(weight[e] >= 0.0) || !std::isfinite(weight[e])) {
      fail(ErrorCode::kInvalidArgument, "edge " + std::to_string(e) + " has an invalid weight");
    }
  }
}

SelectionEdges normalize_interpolation(const SelectionEdges& edges) {
  const std::size_t limit = edges.interpolated_size();
  std::unordered_map<std::uint64_t, double> sums;
  sums.reserve(limit);
  for (std::size_t e = 0; e < limit; ++e) {
    sums[pair_key(edges.src[e], edges.dst[e])] += edges.weight[e];
  }
  for (const auto& [key, total] : sums) {
    if (!(total > 0.0)) {
      std::ostringstream msg;
      msg << "interpolation group (src " << (key >> 32) << ", dst " << (key & 0xffffffffu)
          << ") has zero total weight";
      fail(ErrorCode::kZeroGroup, msg.str());
    }
  }

  std::vector<std::size_t> keep;
  std::vector<double> weights;
  keep.reserve(edges.size());
  weights.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (e >= limit) {
      keep.push_back(e);
      weights.push_back(edges.weight[e]);
      continue;
    }
    if (edges.weight[e] == 0.0) continue;
    const double total = sums[pair_key(edges.src[e], edges.dst[e])];
    keep.push_back(e);
    weights.push_back(edges.weight[e] / total);
  }
  return copy_subset(edges, keep, weights);
}

SelectionEdges normalize_rows(const SelectionEdges& edges) {
  const std::size_t groups = max_dst_plus_one(edges) * kSelectionCount;
  std::vector<double> sums(groups, 0.0);
  std::vector<std::uint8_t> present(groups, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t g = edges.dst[e] * kSelectionCount + edges.selection[e];
    sums[g] += edges.weight[e];
    present[g] = 1;
  }
  for (std::size_t g = 0; g < groups; ++g) {
    if (present[g] && !(sums[g] > 0.0)) {
      fail(ErrorCode::kZeroGroup, "row group (dst " + std::to_string(g / kSelectionCount) +
                                      ", selection " + std::to_string(g % kSelectionCount) +
                                      ") has zero total weight");
    }
  }
  SelectionEdges out = edges;
  for (std::size_t e = 0; e < out.size(); ++e) {
    out.weight[e] /= sums[out.dst[e] * kSelectionCount + out.selection[e]];
  }
  return out;
}

SelectionEdges add_replicate_padding(const SelectionEdges& edges, std::size_t node_count,
                                     const PaddingSource& source) {
  std::vector<std::uint8_t> present(node_count * kSelectionCount, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    present[edges.dst[e] * kSelectionCount + edges.selection[e]] = 1;
  }
  SelectionEdges out = edges;
  if (!out.padding_begin) out.padding_begin = out.size();
  for (std::uint32_t i = 0; i < node_count; ++i) {
    for (std::uint8_t m = 0; m < kSelectionCount; ++m) {
      if (present[i * kSelectionCount + m]) continue;
      const auto sel = static_cast<Selection>(m);
      const std::uint32_t from = source ? source(i, sel) : i;
      out.push(from, i, sel, 1.0);
    }
  }
  return out;
}

std::vector<std::uint32_t> ClusterAssignment::cluster_sizes() const {
  std::vector<std::uint32_t> sizes(coarse_count, 0);
  for (auto p : parent) ++sizes[p];
  return sizes;
}

std::size_t ClusterAssignment::empty_clusters() const {
  const auto sizes = cluster_sizes();
  return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 0u));
}

void ClusterAssignment::validate() const {
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] >= coarse_count) {
      fail(ErrorCode::kShapeError,
           "fine node " + std::to_string(i) + " maps to a missing coarse node");
    }
  }
}

ClusterAssignment ClusterAssignment::identity(std::size_t n) {
  ClusterAssignment a;
  a.parent.resize(n);
  for (std::size_t i = 0; i < n; ++i) a.parent[i] = static_cast<std::uint32_t>(i);
  a.coarse_count = static_cast<std::uint32_t>(n);
  return a;
}

FeatureMatrix pool(const FeatureMatrix& features, const ClusterAssignment& assignment,
                   PoolMode mode) {
  if (static_cast<std::size_t>(features.rows()) != assignment.fine_count()) {
    fail(ErrorCode::kShapeError, "pool: feature rows " + std::to_string(features.rows()) +
                                     " != fine node count " +
                                     std::to_string(assignment.fine_count()));
  }
  const Eigen::Index cols = features.cols();
  FeatureMatrix out = FeatureMatrix::Zero(assignment.coarse_count, cols);
  std::vector<std::uint32_t> counts(assignment.coarse_count, 0);
  for (std::size_t i = 0; i < assignment.fine_count(); ++i) {
    const auto c = assignment.parent[i];
    if (mode == PoolMode::kMean || counts[c] == 0) {
      if (mode == PoolMode::kMean) {
        out.row(c) += features.row(static_cast<Eigen::Index>(i));
      } else {
        out.row(c) = features.row(static_cast<Eigen::Index>(i));
      }
    } else {
      out.row(c) = out.row(c).cwiseMax(features.row(static_cast<Eigen::Index>(i)));
    }
    ++counts[c];
  }
  std::size_t empty = 0;
  for (std::uint32_t c = 0; c < assignment.coarse_count; ++c) {
    if (counts[c] == 0) {
      ++empty;
    } else if (mode == PoolMode::kMean) {
      out.row(c) /= static_cast<double>(counts[c]);
    }
  }
  if (empty > 0) {
    log::warning("pool: " + std::to_string(empty) + " of " +
                 std::to_string(assignment.coarse_count) + " clusters are empty");
  }
  return out;
}

FeatureMatrix unpool(const FeatureMatrix& features, const ClusterAssignment& assignment) {
  if (static_cast<std::size_t>(features.rows()) != assignment.coarse_count) {
    fail(ErrorCode::kShapeError, "unpool: feature rows " + std::to_string(features.rows()) +
                                     " != coarse node count " +
                                     std::to_string(assignment.coarse_count));
  }
  FeatureMatrix out(static_cast<Eigen::Index>(assignment.fine_count()), features.cols());
  for (std::size_t i = 0; i < assignment.fine_count(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = features.row(assignment.parent[i]);
  }
  return out;
}

void GraphPyramid::validate() const {
  if (levels.empty()) fail(ErrorCode::kShapeError, "pyramid has no levels");
  if (assignments.size() + 1 != levels.size()) {
    fail(ErrorCode::kShapeError, "pyramid needs exactly one assignment per level transition");
  }
  for (std::size_t l = 0; l < levels.size(); ++l) {
    levels[l].nodes.validate(domain == "sphere");
    levels[l].edges.validate(levels[l].nodes.size());
    if (l + 1 < levels.size()) {
      const auto& a = assignments[l];
      a.validate();
      if (a.fine_count() != levels[l].nodes.size() ||
          a.coarse_count != levels[l + 1].nodes.size()) {
        fail(ErrorCode::kShapeError,
             "assignment " + std::to_string(l) + " does not match its level sizes");
      }
      if (levels[l + 1].nodes.size() >= levels[l].nodes.size()) {
        fail(ErrorCode::kShapeError, "node counts must strictly decrease between levels");
      }
    }
  }
}

}  // namespace selgraph
