// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "selgraph/graph.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph {

inline constexpr const char* kPyramidMagic = "SGPYRAMD";

/// Pyramid file: container with arrays named "level{l}.positions" (f64 n x 3),
/// "level{l}.normals", optional "level{l}.uvs" (f64 n x 2) and
/// "level{l}.source_pixels" (u32 n x 2), "level{l}.src"/"level{l}.dst" (u32),
/// "level{l}.selection" (u8), "level{l}.weight" (f64) and
/// "assignment{l}.parent" (u32).
std::vector<std::uint8_t> encode_pyramid(const GraphPyramid& pyramid);
GraphPyramid decode_pyramid(std::span<const std::uint8_t> bytes);

void write_pyramid(const std::filesystem::path& path, const GraphPyramid& pyramid);
GraphPyramid read_pyramid(const std::filesystem::path& path);

/// Point sets are stored as a single edge-free level with domain "points"
/// and the sampling parameters in the manifest.
std::vector<std::uint8_t> encode_point_set(const SphericalPointSet& points);
SphericalPointSet decode_point_set(std::span<const std::uint8_t> bytes);

}  // namespace selgraph
