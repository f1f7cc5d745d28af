// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selgraph/error.hpp"

namespace selgraph {

double median(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::kInvalidArgument, "median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

double pixel_difference(const Image& image, std::uint32_t r0, std::uint32_t c0, std::uint32_t r1,
                        std::uint32_t c1) {
  double d = 0.0;
  for (std::uint32_t ch = 0; ch < image.channels; ++ch) {
    d += std::abs(image.at(r0, c0, ch) - image.at(r1, c1, ch));
  }
  return d / image.channels;
}

double seam_discontinuity_score(const Image& image) {
  image.validate();
  if (image.width < 3 || image.height < 1) {
    fail(ErrorCode::kShapeError, "seam score needs at least 3 columns");
  }
  std::vector<double> seam;
  std::vector<double> interior;
  seam.reserve(image.height);
  interior.reserve(static_cast<std::size_t>(image.height) * (image.width - 1));
  for (std::uint32_t r = 0; r < image.height; ++r) {
    seam.push_back(pixel_difference(image, r, image.width - 1, r, 0));
    for (std::uint32_t c = 0; c + 1 < image.width; ++c) {
      interior.push_back(pixel_difference(image, r, c, r, c + 1));
    }
  }
  const double s = median(std::move(seam));
  const double i = median(std::move(interior));
  if (i == 0.0) return s == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return s / i;
}

}  // namespace selgraph
