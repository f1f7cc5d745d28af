// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "selgraph/features.hpp"
#include "selgraph/graph.hpp"

namespace selgraph {

/// Planar 3x3 kernel in (row, col, in, out) order, rows growing downward.
struct PlanarKernel {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::vector<double> values;  // 9 * in * out

  PlanarKernel() = default;
  PlanarKernel(std::size_t in, std::size_t out)
      : in_channels(in), out_channels(out), values(9 * in * out, 0.0) {}

  double& at(std::size_t r, std::size_t c, std::size_t i, std::size_t o) {
    return values[((r * 3 + c) * in_channels + i) * out_channels + o];
  }
  double at(std::size_t r, std::size_t c, std::size_t i, std::size_t o) const {
    return values[((r * 3 + c) * in_channels + i) * out_channels + o];
  }
};

using SelectionWeights = std::array<WeightMatrix, kSelectionCount>;

/// Kernel tap (row, col) that feeds selection `s`: NW is (0,0), center (1,1), SE (2,2).
std::array<std::size_t, 2> kernel_position(Selection s);

/// Splits a planar kernel into one C_in x C_out matrix per selection.
SelectionWeights transfer_kernel(const PlanarKernel& kernel);

/// Inverse of transfer_kernel.
PlanarKernel planar_kernel(const SelectionWeights& taps);

enum class LayerKind { kConv3x3, kConv1x1 };

struct LayerWeights {
  LayerKind kind = LayerKind::kConv3x3;
  SelectionWeights taps;   // kConv3x3
  WeightMatrix matrix;     // kConv1x1
  Eigen::RowVectorXd bias;  // empty when the layer has none

  Eigen::Index in_channels() const;
  Eigen::Index out_channels() const;
  void validate(const std::string& name) const;
};

struct WeightStore {
  std::map<std::string, LayerWeights> layers;

  const LayerWeights& at(const std::string& name) const;
  void validate() const;
};

inline constexpr const char* kWeightMagic = "SGWEIGHT";

/// Weight file: container whose manifest is
///   {"format": "selgraph-weights", "version": 1, "checksum": <CRC32 of blob>,
///    "layers": [{"name", "kind", "shape", "dtype": "f32", "offset", "length"}]}
/// kind "conv3x3" has shape [3, 3, C_in, C_out] (planar layout), "conv1x1"
/// [C_in, C_out], and "bias" [C_out] attached to the conv entry of the same
/// name. Values are little-endian f32.
std::vector<std::uint8_t> encode_weights(const WeightStore& store);
WeightStore decode_weights(std::span<const std::uint8_t> bytes);

void save_weights(const WeightStore& store, const std::filesystem::path& path);
WeightStore load_weights(const std::filesystem::path& path);

}  // namespace selgraph
