// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "selgraph/error.hpp"

namespace selgraph {

void Image::validate() const {
  if (data.size() != static_cast<std::size_t>(width) * height * channels) {
    fail(ErrorCode::kShapeError, "image data length does not match its dimensions");
  }
  for (double v : data) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "image contains non-finite values");
  }
}

Image read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    fail(ErrorCode::kIoError, "cannot read PNG '" + path.string() + "': " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    std::string message = png.message;
    png_image_free(&png);
    fail(ErrorCode::kIoError, "cannot decode PNG '" + path.string() + "': " + message);
  }
  Image image(png.width, png.height, 3);
  for (std::size_t i = 0; i < buffer.size(); ++i) image.data[i] = buffer[i] / 255.0;
  return image;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  image.validate();
  if (image.channels != 1 && image.channels != 3) {
    fail(ErrorCode::kShapeError, "PNG output needs 1 or 3 channels, got " +
                                     std::to_string(image.channels));
  }
  std::vector<png_byte> buffer(image.data.size());
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    const double v = std::clamp(image.data[i], 0.0, 1.0);
    buffer[i] = static_cast<png_byte>(std::lround(v * 255.0));
  }
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = image.width;
  png.height = image.height;
  png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    fail(ErrorCode::kIoError, "cannot write PNG '" + path.string() + "': " + png.message);
  }
}

double mean_squared_error(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    fail(ErrorCode::kShapeError, "images differ in shape");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    total += d * d;
  }
  return total / static_cast<double>(a.data.size());
}

double psnr(const Image& a, const Image& b) {
  const double mse = mean_squared_error(a, b);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

void sample_bilinear(const Image& image, double x, double y, bool wrap_x, double* out) {
  const double fx = x - 0.5;
  const double fy = std::clamp(y - 0.5, 0.0, static_cast<double>(image.height - 1));
  const auto r0 = static_cast<std::int64_t>(std::floor(fy));
  const auto r1 = std::min<std::int64_t>(r0 + 1, image.height - 1);
  const double ty = fy - static_cast<double>(r0);

  std::int64_t c0;
  std::int64_t c1;
  double tx;
  const auto w = static_cast<std::int64_t>(image.width);
  if (wrap_x) {
    const double base = std::floor(fx);
    tx = fx - base;
    c0 = static_cast<std::int64_t>(base) % w;
    if (c0 < 0) c0 += w;
    c1 = (c0 + 1) % w;
  } else {
    const double cx = std::clamp(fx, 0.0, static_cast<double>(w - 1));
    c0 = static_cast<std::int64_t>(std::floor(cx));
    c1 = std::min<std::int64_t>(c0 + 1, w - 1);
    tx = cx - static_cast<double>(c0);
  }
  for (std::uint32_t ch = 0; ch < image.channels; ++ch) {
    const auto rr0 = static_cast<std::uint32_t>(r0);
    const auto rr1 = static_cast<std::uint32_t>(r1);
    const auto cc0 = static_cast<std::uint32_t>(c0);
    const auto cc1 = static_cast<std::uint32_t>(c1);
    const double top = (1.0 - tx) * image.at(rr0, cc0, ch) + tx * image.at(rr0, cc1, ch);
    const double bottom = (1.0 - tx) * image.at(rr1, cc0, ch) + tx * image.at(rr1, cc1, ch);
    out[ch] = (1.0 - ty) * top + ty * bottom;
  }
}

}  // namespace selgraph
