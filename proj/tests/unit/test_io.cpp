// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "selgraph/container.hpp"
#include "selgraph/error.hpp"
#include "selgraph/grid_graph.hpp"
#include "selgraph/image.hpp"
#include "selgraph/pyramid_io.hpp"
#include "selgraph/sphere_graph.hpp"
#include "selgraph/weights.hpp"

namespace selgraph {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("selgraph_test_" + name);
}

TEST(Container, LayoutAndErrors) {
  Container c;
  c.manifest = {{"a", 1}};
  BlobWriter w;
  const std::vector<std::uint8_t> three = {1, 2, 3};
  EXPECT_EQ(w.append(three), 0u);
  EXPECT_EQ(w.append(three), 8u);
  c.blob = w.release();
  const auto bytes = encode_container("TESTMAGC", c);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "TESTMAGC");
  std::uint64_t len = 0;
  std::memcpy(&len, bytes.data() + 8, 8);
  EXPECT_EQ(len, c.manifest.dump().size());
  EXPECT_EQ((16 + len + 7) / 8 * 8 + 11, bytes.size());
  const auto back = decode_container("TESTMAGC", bytes);
  EXPECT_EQ(back.manifest, c.manifest);
  EXPECT_EQ(back.blob, c.blob);

  EXPECT_EQ(code_of([&] { decode_container("OTHERMAG", bytes); }), ErrorCode::kFormatError);
  const std::vector<std::uint8_t> shortfile(bytes.begin(), bytes.begin() + 20);
  EXPECT_EQ(code_of([&] { decode_container("TESTMAGC", shortfile); }), ErrorCode::kFormatError);
  EXPECT_EQ(crc32(std::vector<std::uint8_t>{'1', '2', '3', '4', '5', '6', '7', '8', '9'}),
            0xCBF43926u);
}

TEST(PyramidIo, BitExactRoundTrip) {
  SphereGraphOptions opt;
  opt.levels = 2;
  opt.scheme = InterpolationScheme::kBarycentric;
  const auto g = build_sphere_graph(sample_random(500, 3), opt);
  const auto bytes = encode_pyramid(g);
  const auto back = decode_pyramid(bytes);
  ASSERT_EQ(back.levels.size(), 2u);
  for (std::size_t l = 0; l < 2; ++l) {
    EXPECT_EQ(back.levels[l].nodes.positions, g.levels[l].nodes.positions);
    EXPECT_EQ(back.levels[l].nodes.normals, g.levels[l].nodes.normals);
    EXPECT_EQ(back.levels[l].edges.src, g.levels[l].edges.src);
    EXPECT_EQ(back.levels[l].edges.dst, g.levels[l].edges.dst);
    EXPECT_EQ(back.levels[l].edges.selection, g.levels[l].edges.selection);
    EXPECT_EQ(back.levels[l].edges.weight, g.levels[l].edges.weight);
    EXPECT_EQ(back.levels[l].edges.padding_begin, g.levels[l].edges.padding_begin);
    EXPECT_EQ(back.levels[l].spacing, g.levels[l].spacing);
  }
  EXPECT_EQ(back.assignments[0].parent, g.assignments[0].parent);
  EXPECT_EQ(back.domain, "sphere");
  EXPECT_EQ(back.selection_order, kSelectionOrderTag);
  EXPECT_EQ(encode_pyramid(back), bytes);

  const auto grid = GraphPyramid{{build_grid_graph(5, 4)}, {}, kSelectionOrderTag, "grid"};
  const auto gback = decode_pyramid(encode_pyramid(grid));
  EXPECT_EQ(gback.levels[0].nodes.source_pixels, grid.levels[0].nodes.source_pixels);

  const auto path = temp_path("pyr.bin");
  write_pyramid(path, g);
  EXPECT_EQ(read_file_bytes(path), bytes);
  std::filesystem::remove(path);
}

TEST(PyramidIo, RejectsCorruption) {
  const auto g = build_sphere_graph(sample_fibonacci(50), {});
  auto bytes = encode_pyramid(g);
  bytes.resize(bytes.size() - 16);
  EXPECT_EQ(code_of([&] { decode_pyramid(bytes); }), ErrorCode::kFormatError);
}

TEST(PointSetIo, RoundTrip) {
  const auto s = sample_random(64, 77);
  const auto back = decode_point_set(encode_point_set(s));
  EXPECT_EQ(back.points, s.points);
  EXPECT_EQ(back.params, s.params);
}

WeightStore random_store(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  WeightStore s;
  PlanarKernel k(3, 2);
  for (auto& v : k.values) v = u(rng);
  LayerWeights conv;
  conv.taps = transfer_kernel(k);
  conv.bias = Eigen::RowVectorXd(2);
  conv.bias << u(rng), u(rng);
  s.layers["conv"] = conv;
  LayerWeights head;
  head.kind = LayerKind::kConv1x1;
  head.matrix.resize(2, 4);
  for (Eigen::Index i = 0; i < head.matrix.size(); ++i) head.matrix.data()[i] = u(rng);
  s.layers["head"] = head;
  return s;
}

TEST(WeightFile, ReadsIndependentlyWrittenBytes) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  std::vector<float> kernel(3 * 3 * 2 * 3), bias(3);
  for (auto& v : kernel) v = u(rng);
  for (auto& v : bias) v = u(rng);
  const auto bytes = oracle::write_weight_file(
      {{"enc", "conv3x3", {3, 3, 2, 3}, kernel}, {"enc", "bias", {3}, bias}});
  const auto store = decode_weights(bytes);
  const auto& enc = store.at("enc");
  ASSERT_EQ(enc.kind, LayerKind::kConv3x3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      // Tap (r, c) feeds the selection whose step is (c - 1, 1 - r).
      int m = 0;
      for (; m < 9; ++m) {
        const auto st = selection_step(static_cast<Selection>(m));
        if (st[0] == c - 1 && st[1] == 1 - r) break;
      }
      for (int i = 0; i < 2; ++i) {
        for (int o = 0; o < 3; ++o) {
          EXPECT_EQ(enc.taps[m](i, o), kernel[((r * 3 + c) * 2 + i) * 3 + o]);
        }
      }
    }
  }
  for (int o = 0; o < 3; ++o) EXPECT_EQ(enc.bias[o], bias[o]);

  // Read the library's own output back by hand.
  const auto out = encode_weights(store);
  ASSERT_EQ(std::string(out.begin(), out.begin() + 8), "SGWEIGHT");
  std::uint64_t len = 0;
  for (int b = 0; b < 8; ++b) len |= std::uint64_t(out[8 + b]) << (8 * b);
  const auto manifest = nlohmann::json::parse(out.begin() + 16, out.begin() + 16 + len);
  const std::size_t blob = (16 + len + 7) / 8 * 8;
  const std::vector<std::uint8_t> region(out.begin() + blob, out.end());
  EXPECT_EQ(manifest.at("checksum").get<std::uint32_t>(), oracle::crc32(region));
  for (const auto& e : manifest.at("layers")) {
    const auto offset = e.at("offset").get<std::size_t>();
    EXPECT_EQ(offset % 8, 0u);
    const auto& expect = e.at("kind") == "bias" ? bias : kernel;
    ASSERT_EQ(e.at("length").get<std::size_t>(), expect.size() * 4);
    for (std::size_t i = 0; i < expect.size(); ++i) {
      float f;
      std::memcpy(&f, region.data() + offset + 4 * i, 4);
      EXPECT_EQ(f, expect[i]);
    }
  }
}

TEST(WeightFile, RoundTripAndErrors) {
  const auto store = random_store(4);
  const auto bytes = encode_weights(store);
  const auto back = decode_weights(bytes);
  EXPECT_EQ(encode_weights(back), bytes);
  for (int m = 0; m < 9; ++m) EXPECT_EQ(back.at("conv").taps[m], store.at("conv").taps[m]);
  EXPECT_EQ(back.at("head").matrix, store.at("head").matrix);

  auto truncated = bytes;
  truncated.resize(bytes.size() - 4);
  EXPECT_EQ(code_of([&] { decode_weights(truncated); }), ErrorCode::kFormatError);
  auto flipped = bytes;
  flipped.back() ^= 0x40;
  EXPECT_EQ(code_of([&] { decode_weights(flipped); }), ErrorCode::kChecksumError);
  const auto five = oracle::write_weight_file(
      {{"big", "conv3x3", {5, 5, 1, 1}, std::vector<float>(25, 0.0f)}});
  EXPECT_EQ(code_of([&] { decode_weights(five); }), ErrorCode::kShapeError);
  EXPECT_EQ(code_of([&] { store.at("missing"); }), ErrorCode::kSpecMismatch);

  const auto path = temp_path("w.bin");
  save_weights(store, path);
  EXPECT_EQ(encode_weights(load_weights(path)), bytes);
  std::filesystem::remove(path);
}

TEST(Png, DeterministicRoundTrip) {
  Image img(7, 5, 3);
  for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = (i % 256) / 255.0;
  const auto a = temp_path("a.png");
  const auto b = temp_path("b.png");
  write_png(a, img);
  write_png(b, img);
  EXPECT_EQ(read_file_bytes(a), read_file_bytes(b));
  const auto back = read_png(a);
  ASSERT_EQ(back.channels, 3u);
  EXPECT_LT(mean_squared_error(img, back), 1e-12);
  EXPECT_GT(psnr(img, back), 100.0);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  EXPECT_EQ(code_of([] { read_png("/nonexistent/file.png"); }), ErrorCode::kIoError);
}

}  // namespace
}  // namespace selgraph
