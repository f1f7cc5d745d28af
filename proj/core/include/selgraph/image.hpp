// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace selgraph {

/// Row-major interleaved raster with real-valued samples (colors in [0, 1]).
struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t channels = 0;
  std::vector<double> data;

  Image() = default;
  Image(std::uint32_t w, std::uint32_t h, std::uint32_t c, double fill = 0.0)
      : width(w), height(h), channels(c), data(static_cast<std::size_t>(w) * h * c, fill) {}

  double& at(std::uint32_t row, std::uint32_t col, std::uint32_t ch) {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  double at(std::uint32_t row, std::uint32_t col, std::uint32_t ch) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }

  void validate() const;
};

/// Equirectangular rasters: columns are azimuth, rows are polar angle.
using EquirectImage = Image;

/// Loads an 8-bit PNG as RGB (gray is expanded, alpha dropped).
Image read_png(const std::filesystem::path& path);

/// Writes 8-bit RGB (or gray for one channel) with fixed encoder settings, so
/// equal images always produce identical bytes.
void write_png(const std::filesystem::path& path, const Image& image);

/// Mean squared error and PSNR over all samples, for peak value 1.
double mean_squared_error(const Image& a, const Image& b);
double psnr(const Image& a, const Image& b);

/// Bilinear fetch at continuous pixel coordinates (x right, y down, pixel
/// centers at integer + 0.5). Columns wrap when `wrap_x`, rows clamp.
void sample_bilinear(const Image& image, double x, double y, bool wrap_x, double* out);

}  // namespace selgraph
