// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Graph execution: X' = sum_m S_m X W_m + b over the selection edges of one
// pyramid level, plus the layer pipeline that runs U-Net style networks over a
// whole pyramid.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "selgraph/features.hpp"
#include "selgraph/graph.hpp"
#include "selgraph/weights.hpp"

namespace selgraph {

/// Edges regrouped by destination node, then selection; within a group the
/// original edge order is kept so accumulation order never changes.
class CompiledEdges {
 public:
  CompiledEdges(const SelectionEdges& edges, std::size_t node_count);

  std::size_t node_count() const { return node_count_; }

  /// Aggregated inputs: row i holds [S_0 X | S_1 X | ... | S_8 X] for node i.
  FeatureMatrix gather(const FeatureMatrix& features) const;

 private:
  std::size_t node_count_;
  std::vector<std::uint32_t> group_begin_;  // (node_count * 9) + 1 offsets
  std::vector<std::uint32_t> src_;
  std::vector<double> weight_;
};

FeatureMatrix sel_conv(const FeatureMatrix& features, const CompiledEdges& edges,
                       const SelectionWeights& taps, const Eigen::RowVectorXd& bias = {});

FeatureMatrix sel_conv(const FeatureMatrix& features, const SelectionEdges& edges,
                       const SelectionWeights& taps, const Eigen::RowVectorXd& bias = {});

FeatureMatrix conv1x1(const FeatureMatrix& features, const WeightMatrix& matrix,
                      const Eigen::RowVectorXd& bias = {});

FeatureMatrix relu(FeatureMatrix features);

enum class LayerType { kSelConv3x3, kConv1x1, kRelu, kPool, kUnpool, kConcatSkip };

struct LayerSpec {
  LayerType type = LayerType::kRelu;
  std::string name;                 // weight entry for conv layers
  PoolMode pool_mode = PoolMode::kMean;
  std::size_t level = 0;            // concat_skip source level
};

/// Ordered layers. Features entering each pool are kept as the skip
/// connection of their level; concat_skip(l) appends them channel-wise after
/// the current features and requires the pipeline to be back at level l.
///
/// JSON form: {"layers": [{"type": "sel_conv3x3", "name": "enc1"},
///   {"type": "relu"}, {"type": "pool", "mode": "mean"}, {"type": "unpool"},
///   {"type": "concat_skip", "level": 0}, {"type": "conv1x1", "name": "head"}]}
struct NetworkSpec {
  std::vector<LayerSpec> layers;

  static NetworkSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Walks the spec without computing anything and returns the output channel
/// count. Throws kSpecMismatch naming the first inconsistent layer.
Eigen::Index check_network(const NetworkSpec& spec, const WeightStore& weights,
                           const GraphPyramid& pyramid, Eigen::Index input_channels);

FeatureMatrix run_network(const NetworkSpec& spec, const WeightStore& weights,
                          const GraphPyramid& pyramid, const FeatureMatrix& input);

}  // namespace selgraph
