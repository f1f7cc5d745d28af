// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "selgraph/image.hpp"

namespace selgraph {

/// Median of a copy of `values` (mean of the middle pair for even sizes).
double median(std::vector<double> values);

/// Mean absolute channel difference between two pixels.
double pixel_difference(const Image& image, std::uint32_t r0, std::uint32_t c0, std::uint32_t r1,
                        std::uint32_t c1);

/// Median |left - right| across the azimuth seam (last column vs first)
/// divided by the median difference of horizontally adjacent interior pixels.
/// 1.0 means the seam is as smooth as the rest of the image.
double seam_discontinuity_score(const Image& image);

}  // namespace selgraph
