// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Core graph data model: node sets, selection-tagged weighted edges, cluster
// assignments between pyramid levels, and the two edge-weight normalizations.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selgraph/features.hpp"
#include "selgraph/geometry.hpp"

namespace selgraph {

/// Kernel tap identifiers. Directions are in the local frame with x to the
/// right and y up, counter-clockwise from east.
enum class Selection : std::uint8_t {
  kCenter = 0,
  kE = 1,
  kNE = 2,
  kN = 3,
  kNW = 4,
  kW = 5,
  kSW = 6,
  kS = 7,
  kSE = 8,
};

inline constexpr std::size_t kSelectionCount = 9;
inline constexpr const char* kSelectionOrderTag = "C,E,NE,N,NW,W,SW,S,SE";

constexpr std::uint8_t index_of(Selection s) { return static_cast<std::uint8_t>(s); }

/// Unit direction of a non-center selection, e.g. NE -> (1,1)/sqrt(2).
Vec2 selection_direction(Selection s);

/// Integer grid step of a selection: E -> (+1, 0), N -> (0, +1), center -> (0, 0).
std::array<int, 2> selection_step(Selection s);

struct NodeSet {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  std::vector<Vec2> uvs;                                 // empty when absent
  std::vector<std::array<std::uint32_t, 2>> source_pixels;  // (row, col); empty when absent

  std::size_t size() const { return positions.size(); }

  /// Throws kShapeError / kInvalidArgument when arrays disagree in length or
  /// normals (and positions, for sphere graphs) are not unit length.
  void validate(bool on_unit_sphere) const;
};

/// Flat edge list realizing the per-selection adjacency matrices. Entry e
/// means node `dst[e]` gathers from node `src[e]` through kernel tap
/// `selection[e]` with weight `weight[e]`.
///
/// Entries at index >= `padding_begin` were appended by replicate padding; the
/// per-(src, dst) interpolation invariant only covers entries before it.
struct SelectionEdges {
  std::vector<std::uint32_t> src;
  std::vector<std::uint32_t> dst;
  std::vector<std::uint8_t> selection;
  std::vector<double> weight;
  std::optional<std::size_t> padding_begin;

  std::size_t size() const { return src.size(); }
  std::size_t interpolated_size() const { return padding_begin.value_or(size()); }
  std::size_t padding_size() const { return size() - interpolated_size(); }

  void push(std::uint32_t from, std::uint32_t to, Selection s, double w);
  void reserve(std::size_t n);

  void validate(std::size_t node_count) const;
};

/// Scales every (src, dst) group so its weights sum to 1. Entries whose
/// weight is exactly zero are dropped; order of the survivors is preserved.
SelectionEdges normalize_interpolation(const SelectionEdges& edges);

/// Scales every (dst, selection) group so its weights sum to 1.
SelectionEdges normalize_rows(const SelectionEdges& edges);

/// Picks the node that stands in for a missing (node, selection) tap.
using PaddingSource = std::function<std::uint32_t(std::uint32_t node, Selection s)>;

/// Appends one weight-1 entry for every (node, selection) pair that has no
/// incoming entry. The stand-in source is the node itself unless `source` is
/// given (grids use it to realize clamp-to-edge borders exactly).
SelectionEdges add_replicate_padding(const SelectionEdges& edges, std::size_t node_count,
                                     const PaddingSource& source = {});

struct ClusterAssignment {
  std::vector<std::uint32_t> parent;
  std::uint32_t coarse_count = 0;

  std::size_t fine_count() const { return parent.size(); }
  std::vector<std::uint32_t> cluster_sizes() const;
  std::size_t empty_clusters() const;
  void validate() const;

  static ClusterAssignment identity(std::size_t n);
};

enum class PoolMode { kMean, kMax };

FeatureMatrix pool(const FeatureMatrix& features, const ClusterAssignment& assignment,
                   PoolMode mode = PoolMode::kMean);

/// Copies each coarse row to every fine node of its cluster.
FeatureMatrix unpool(const FeatureMatrix& features, const ClusterAssignment& assignment);

struct GraphLevel {
  NodeSet nodes;
  SelectionEdges edges;
  double spacing = 0.0;  // expected neighbor distance d at this level
};

struct GraphPyramid {
  std::vector<GraphLevel> levels;
  std::vector<ClusterAssignment> assignments;  // assignments[l]: level l -> level l+1
  std::string selection_order = kSelectionOrderTag;
  std::string domain;  // "sphere", "mesh" or "grid"

  void validate() const;
};

}  // namespace selgraph
