// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/conv.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "selgraph/error.hpp"

namespace selgraph {
namespace {

using nlohmann::json;

std::string describe(std::size_t index, const LayerSpec& layer) {
  std::string s = "layer " + std::to_string(index);
  if (!layer.name.empty()) s += " ('" + layer.name + "')";
  return s;
}

void add_bias(FeatureMatrix& out, const Eigen::RowVectorXd& bias) {
  if (bias.size() == 0) return;
  if (bias.size() != out.cols()) fail(ErrorCode::kShapeError, "bias length does not match C_out");
  out.rowwise() += bias;
}

const char* type_name(LayerType t) {
  switch (t) {
    case LayerType::kSelConv3x3: return "sel_conv3x3";
    case LayerType::kConv1x1: return "conv1x1";
    case LayerType::kRelu: return "relu";
    case LayerType::kPool: return "pool";
    case LayerType::kUnpool: return "unpool";
    case LayerType::kConcatSkip: return "concat_skip";
  }
  return "unknown";
}

}  // namespace

CompiledEdges::CompiledEdges(const SelectionEdges& edges, std::size_t node_count)
    : node_count_(node_count) {
  edges.validate(node_count);
  const std::size_t groups = node_count * kSelectionCount;
  std::vector<std::uint32_t> counts(groups + 1, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ++counts[edges.dst[e] * kSelectionCount + edges.selection[e] + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  group_begin_ = counts;
  src_.resize(edges.size());
  weight_.resize(edges.size());
  std::vector<std::uint32_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto slot = cursor[edges.dst[e] * kSelectionCount + edges.selection[e]]++;
    src_[slot] = edges.src[e];
    weight_[slot] = edges.weight[e];
  }
}

FeatureMatrix CompiledEdges::gather(const FeatureMatrix& features) const {
  if (static_cast<std::size_t>(features.rows()) != node_count_) {
    fail(ErrorCode::kShapeError, "feature rows " + std::to_string(features.rows()) +
                                     " do not match node count " + std::to_string(node_count_));
  }
  const Eigen::Index cin = features.cols();
  FeatureMatrix out = FeatureMatrix::Zero(static_cast<Eigen::Index>(node_count_),
                                          cin * static_cast<Eigen::Index>(kSelectionCount));
  for (std::size_t i = 0; i < node_count_; ++i) {
    auto row = out.row(static_cast<Eigen::Index>(i));
    for (std::size_t m = 0; m < kSelectionCount; ++m) {
      const std::size_t g = i * kSelectionCount + m;
      auto seg = row.segment(static_cast<Eigen::Index>(m) * cin, cin);
      for (std::uint32_t s = group_begin_[g]; s < group_begin_[g + 1]; ++s) {
        seg += weight_[s] * features.row(src_[s]);
      }
    }
  }
  return out;
}

FeatureMatrix sel_conv(const FeatureMatrix& features, const CompiledEdges& edges,
                       const SelectionWeights& taps, const Eigen::RowVectorXd& bias) {
  const Eigen::Index cin = taps[0].rows();
  const Eigen::Index cout = taps[0].cols();
  if (features.cols() != cin) {
    fail(ErrorCode::kShapeError, "sel_conv: input has " + std::to_string(features.cols()) +
                                     " channels, weights expect " + std::to_string(cin));
  }
  WeightMatrix stacked(cin * static_cast<Eigen::Index>(kSelectionCount), cout);
  for (std::size_t m = 0; m < kSelectionCount; ++m) {
    if (taps[m].rows() != cin || taps[m].cols() != cout) {
      fail(ErrorCode::kShapeError, "sel_conv: selection matrices differ in shape");
    }
    stacked.middleRows(static_cast<Eigen::Index>(m) * cin, cin) = taps[m];
  }
  FeatureMatrix out = edges.gather(features) * stacked;
  add_bias(out, bias);
  return out;
}

FeatureMatrix sel_conv(const FeatureMatrix& features, const SelectionEdges& edges,
                       const SelectionWeights& taps, const Eigen::RowVectorXd& bias) {
  return sel_conv(features, CompiledEdges(edges, static_cast<std::size_t>(features.rows())), taps,
                  bias);
}

FeatureMatrix conv1x1(const FeatureMatrix& features, const WeightMatrix& matrix,
                      const Eigen::RowVectorXd& bias) {
  if (features.cols() != matrix.rows()) {
    fail(ErrorCode::kShapeError, "conv1x1: input has " + std::to_string(features.cols()) +
                                     " channels, weights expect " + std::to_string(matrix.rows()));
  }
  FeatureMatrix out = features * matrix;
  add_bias(out, bias);
  return out;
}

FeatureMatrix relu(FeatureMatrix features) {
  features = features.cwiseMax(0.0);
  return features;
}

NetworkSpec NetworkSpec::from_json(const json& j) {
  NetworkSpec spec;
  try {
    const json& layers = j.is_array() ? j : j.at("layers");
    for (const auto& l : layers) {
      LayerSpec layer;
      const auto type = l.at("type").get<std::string>();
      if (type == "sel_conv3x3" || type == "conv3x3") {
        layer.type = LayerType::kSelConv3x3;
        layer.name = l.at("name").get<std::string>();
      } else if (type == "conv1x1") {
        layer.type = LayerType::kConv1x1;
        layer.name = l.at("name").get<std::string>();
      } else if (type == "relu") {
        layer.type = LayerType::kRelu;
      } else if (type == "pool") {
        layer.type = LayerType::kPool;
        const auto mode = l.value("mode", std::string("mean"));
        if (mode == "mean") {
          layer.pool_mode = PoolMode::kMean;
        } else if (mode == "max") {
          layer.pool_mode = PoolMode::kMax;
        } else {
          fail(ErrorCode::kSpecMismatch, "unknown pool mode '" + mode + "'");
        }
      } else if (type == "unpool") {
        layer.type = LayerType::kUnpool;
      } else if (type == "concat_skip") {
        layer.type = LayerType::kConcatSkip;
        layer.level = l.at("level").get<std::size_t>();
      } else {
        fail(ErrorCode::kSpecMismatch, "unknown layer type '" + type + "'");
      }
      spec.layers.push_back(std::move(layer));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kSpecMismatch, std::string("malformed network spec: ") + e.what());
  }
  return spec;
}

json NetworkSpec::to_json() const {
  json layers_json = json::array();
  for (const auto& l : layers) {
    json j = {{"type", type_name(l.type)}};
    if (l.type == LayerType::kSelConv3x3 || l.type == LayerType::kConv1x1) j["name"] = l.name;
    if (l.type == LayerType::kPool) j["mode"] = l.pool_mode == PoolMode::kMean ? "mean" : "max";
    if (l.type == LayerType::kConcatSkip) j["level"] = l.level;
    layers_json.push_back(j);
  }
  return {{"layers", layers_json}};
}

Eigen::Index check_network(const NetworkSpec& spec, const WeightStore& weights,
                           const GraphPyramid& pyramid, Eigen::Index input_channels) {
  Eigen::Index channels = input_channels;
  std::size_t level = 0;
  std::map<std::size_t, Eigen::Index> skips;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& layer = spec.layers[i];
    auto mismatch = [&](const std::string& what) {
      fail(ErrorCode::kSpecMismatch, describe(i, layer) + ": " + what);
    };
    switch (layer.type) {
      case LayerType::kSelConv3x3:
      case LayerType::kConv1x1: {
        auto it = weights.layers.find(layer.name);
        if (it == weights.layers.end()) mismatch("no weights named '" + layer.name + "'");
        const auto want = layer.type == LayerType::kSelConv3x3 ? LayerKind::kConv3x3
                                                                : LayerKind::kConv1x1;
        if (it->second.kind != want) mismatch("weight kind does not match the layer type");
        if (it->second.in_channels() != channels) {
          mismatch("expects " + std::to_string(it->second.in_channels()) +
                   " input channels, pipeline carries " + std::to_string(channels));
        }
        channels = it->second.out_channels();
        break;
      }
      case LayerType::kRelu: break;
      case LayerType::kPool:
        if (level + 1 >= pyramid.levels.size()) mismatch("pool below the coarsest pyramid level");
        skips[level] = channels;
        ++level;
        break;
      case LayerType::kUnpool:
        if (level == 0) mismatch("unpool above the finest pyramid level");
        --level;
        break;
      case LayerType::kConcatSkip: {
        if (layer.level != level) {
          mismatch("skip from level " + std::to_string(layer.level) + " used at level " +
                   std::to_string(level));
        }
        auto it = skips.find(level);
        if (it == skips.end()) mismatch("no stored features for level " + std::to_string(level));
        channels += it->second;
        break;
      }
    }
  }
  if (level != 0) fail(ErrorCode::kSpecMismatch, "network does not end at the finest level");
  return channels;
}

FeatureMatrix run_network(const NetworkSpec& spec, const WeightStore& weights,
                          const GraphPyramid& pyramid, const FeatureMatrix& input) {
  if (pyramid.levels.empty()) fail(ErrorCode::kSpecMismatch, "pyramid has no levels");
  if (static_cast<std::size_t>(input.rows()) != pyramid.levels[0].nodes.size()) {
    fail(ErrorCode::kSpecMismatch, "input rows do not match the finest level node count");
  }
  check_network(spec, weights, pyramid, input.cols());

  std::vector<std::optional<CompiledEdges>> compiled(pyramid.levels.size());
  auto edges_at = [&](std::size_t l) -> const CompiledEdges& {
    if (!compiled[l]) compiled[l].emplace(pyramid.levels[l].edges, pyramid.levels[l].nodes.size());
    return *compiled[l];
  };

  FeatureMatrix x = input;
  std::size_t level = 0;
  std::map<std::size_t, FeatureMatrix> skips;
  for (const auto& layer : spec.layers) {
    switch (layer.type) {
      case LayerType::kSelConv3x3: {
        const auto& w = weights.at(layer.name);
        x = sel_conv(x, edges_at(level), w.taps, w.bias);
        break;
      }
      case LayerType::kConv1x1: {
        const auto& w = weights.at(layer.name);
        x = conv1x1(x, w.matrix, w.bias);
        break;
      }
      case LayerType::kRelu: x = relu(std::move(x)); break;
      case LayerType::kPool:
        skips[level] = x;
        x = pool(x, pyramid.assignments[level], layer.pool_mode);
        ++level;
        break;
      case LayerType::kUnpool:
        --level;
        x = unpool(x, pyramid.assignments[level]);
        break;
      case LayerType::kConcatSkip: {
        const FeatureMatrix& skip = skips.at(level);
        FeatureMatrix joined(x.rows(), x.cols() + skip.cols());
        joined << x, skip;
        x = std::move(joined);
        break;
      }
    }
  }
  return x;
}

}  // namespace selgraph
