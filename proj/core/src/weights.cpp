// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/weights.hpp"

#include <cmath>

#include "selgraph/container.hpp"
#include "selgraph/error.hpp"

namespace selgraph {
namespace {

using nlohmann::json;

constexpr int kWeightVersion = 1;

std::vector<float> to_f32(const double* data, std::size_t n) {
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<float>(data[i]);
  return out;
}

std::vector<std::uint64_t> shape_of(const json& entry) {
  return entry.at("shape").get<std::vector<std::uint64_t>>();
}

}  // namespace

std::array<std::size_t, 2> kernel_position(Selection s) {
  const auto step = selection_step(s);
  return {static_cast<std::size_t>(1 - step[1]), static_cast<std::size_t>(1 + step[0])};
}

SelectionWeights transfer_kernel(const PlanarKernel& kernel) {
  if (kernel.values.size() != 9 * kernel.in_channels * kernel.out_channels ||
      kernel.in_channels == 0 || kernel.out_channels == 0) {
    fail(ErrorCode::kShapeError, "planar kernel must be 3 x 3 x C_in x C_out");
  }
  SelectionWeights taps;
  const auto in = static_cast<Eigen::Index>(kernel.in_channels);
  const auto out = static_cast<Eigen::Index>(kernel.out_channels);
  for (std::uint8_t m = 0; m < kSelectionCount; ++m) {
    const auto [r, c] = kernel_position(static_cast<Selection>(m));
    taps[m].resize(in, out);
    for (Eigen::Index i = 0; i < in; ++i) {
      for (Eigen::Index o = 0; o < out; ++o) taps[m](i, o) = kernel.at(r, c, i, o);
    }
  }
  return taps;
}

PlanarKernel planar_kernel(const SelectionWeights& taps) {
  PlanarKernel kernel(taps[0].rows(), taps[0].cols());
  for (std::uint8_t m = 0; m < kSelectionCount; ++m) {
    if (taps[m].rows() != taps[0].rows() || taps[m].cols() != taps[0].cols()) {
      fail(ErrorCode::kShapeError, "selection matrices differ in shape");
    }
    const auto [r, c] = kernel_position(static_cast<Selection>(m));
    for (Eigen::Index i = 0; i < taps[m].rows(); ++i) {
      for (Eigen::Index o = 0; o < taps[m].cols(); ++o) kernel.at(r, c, i, o) = taps[m](i, o);
    }
  }
  return kernel;
}

Eigen::Index LayerWeights::in_channels() const {
  return kind == LayerKind::kConv3x3 ? taps[0].rows() : matrix.rows();
}

Eigen::Index LayerWeights::out_channels() const {
  return kind == LayerKind::kConv3x3 ? taps[0].cols() : matrix.cols();
}

void LayerWeights::validate(const std::string& name) const {
  auto finite = [](const auto& m) { return m.allFinite(); };
  if (kind == LayerKind::kConv3x3) {
    for (const auto& t : taps) {
      if (t.rows() != taps[0].rows() || t.cols() != taps[0].cols() || t.size() == 0) {
        fail(ErrorCode::kShapeError, "layer '" + name + "': selection matrices differ in shape");
      }
      if (!finite(t)) fail(ErrorCode::kInvalidArgument, "layer '" + name + "': non-finite weight");
    }
  } else if (matrix.size() == 0 || !finite(matrix)) {
    fail(ErrorCode::kShapeError, "layer '" + name + "': invalid 1x1 matrix");
  }
  if (bias.size() != 0 && bias.size() != out_channels()) {
    fail(ErrorCode::kShapeError, "layer '" + name + "': bias length does not match C_out");
  }
}

const LayerWeights& WeightStore::at(const std::string& name) const {
  auto it = layers.find(name);
  if (it == layers.end()) fail(ErrorCode::kSpecMismatch, "no weights for layer '" + name + "'");
  return it->second;
}

void WeightStore::validate() const {
  for (const auto& [name, layer] : layers) layer.validate(name);
}

std::vector<std::uint8_t> encode_weights(const WeightStore& store) {
  store.validate();
  BlobWriter blob;
  json entries = json::array();
  auto add = [&](const std::string& name, const char* kind, std::vector<std::uint64_t> shape,
                 const std::vector<float>& values) {
    const auto offset = blob.append_array<float>(values);
    entries.push_back({{"name", name},
                       {"kind", kind},
                       {"shape", shape},
                       {"dtype", "f32"},
                       {"offset", offset},
                       {"length", values.size() * sizeof(float)}});
  };
  for (const auto& [name, layer] : store.layers) {
    const auto in = static_cast<std::uint64_t>(layer.in_channels());
    const auto out = static_cast<std::uint64_t>(layer.out_channels());
    if (layer.kind == LayerKind::kConv3x3) {
      const PlanarKernel k = planar_kernel(layer.taps);
      add(name, "conv3x3", {3, 3, in, out}, to_f32(k.values.data(), k.values.size()));
    } else {
      add(name, "conv1x1", {in, out}, to_f32(layer.matrix.data(), layer.matrix.size()));
    }
    if (layer.bias.size() > 0) {
      add(name, "bias", {out}, to_f32(layer.bias.data(), layer.bias.size()));
    }
  }
  Container c;
  c.blob = blob.release();
  c.manifest = {{"format", "selgraph-weights"},
                {"version", kWeightVersion},
                {"checksum", crc32(c.blob)},
                {"layers", entries}};
  return encode_container(kWeightMagic, c);
}

WeightStore decode_weights(std::span<const std::uint8_t> bytes) {
  const Container c = decode_container(kWeightMagic, bytes);
  WeightStore store;
  std::vector<std::pair<std::string, std::vector<float>>> biases;
  try {
    const json& m = c.manifest;
    if (m.at("version").get<int>() != kWeightVersion) {
      fail(ErrorCode::kFormatError, "unsupported weight file version");
    }
    // Bounds first, so a truncated file reports FormatError rather than a
    // checksum mismatch.
    for (const auto& e : m.at("layers")) {
      const auto offset = e.at("offset").get<std::uint64_t>();
      const auto length = e.at("length").get<std::uint64_t>();
      if (offset > c.blob.size() || length > c.blob.size() - offset) {
        fail(ErrorCode::kFormatError, "layer '" + e.at("name").get<std::string>() +
                                          "' runs past the end of the file");
      }
    }
    if (crc32(c.blob) != m.at("checksum").get<std::uint32_t>()) {
      fail(ErrorCode::kChecksumError, "blob CRC32 does not match the manifest");
    }
    for (const auto& e : m.at("layers")) {
      const auto name = e.at("name").get<std::string>();
      const auto kind = e.at("kind").get<std::string>();
      if (e.at("dtype").get<std::string>() != "f32") {
        fail(ErrorCode::kFormatError, "layer '" + name + "' is not f32");
      }
      const auto shape = shape_of(e);
      const auto values =
          read_blob_array<float>(c, e.at("offset").get<std::uint64_t>(),
                                 e.at("length").get<std::uint64_t>());
      std::uint64_t expected = 1;
      for (auto s : shape) expected *= s;
      if (expected != values.size()) {
        fail(ErrorCode::kFormatError, "layer '" + name + "' length does not match its shape");
      }
      if (kind == "conv3x3") {
        if (shape.size() != 4 || shape[0] != 3 || shape[1] != 3) {
          fail(ErrorCode::kShapeError,
               "layer '" + name + "': only 3x3 and 1x1 kernels are supported");
        }
        PlanarKernel k(shape[2], shape[3]);
        for (std::size_t i = 0; i < values.size(); ++i) k.values[i] = values[i];
        LayerWeights& lw = store.layers[name];
        lw.kind = LayerKind::kConv3x3;
        lw.taps = transfer_kernel(k);
      } else if (kind == "conv1x1") {
        if (shape.size() != 2) {
          fail(ErrorCode::kShapeError, "layer '" + name + "': 1x1 weights need shape [C_in, C_out]");
        }
        LayerWeights& lw = store.layers[name];
        lw.kind = LayerKind::kConv1x1;
        lw.matrix.resize(static_cast<Eigen::Index>(shape[0]), static_cast<Eigen::Index>(shape[1]));
        for (std::size_t i = 0; i < values.size(); ++i) lw.matrix.data()[i] = values[i];
      } else if (kind == "bias") {
        if (shape.size() != 1) fail(ErrorCode::kShapeError, "bias '" + name + "' must be 1-D");
        biases.emplace_back(name, values);
      } else {
        fail(ErrorCode::kShapeError, "layer '" + name + "' has unsupported kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("malformed weight manifest: ") + e.what());
  }
  for (const auto& [name, values] : biases) {
    auto it = store.layers.find(name);
    if (it == store.layers.end()) {
      fail(ErrorCode::kFormatError, "bias '" + name + "' has no matching conv layer");
    }
    it->second.bias.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) it->second.bias[i] = values[i];
  }
  store.validate();
  return store;
}

void save_weights(const WeightStore& store, const std::filesystem::path& path) {
  write_file_bytes(path, encode_weights(store));
}

WeightStore load_weights(const std::filesystem::path& path) {
  return decode_weights(read_file_bytes(path));
}

}  // namespace selgraph
