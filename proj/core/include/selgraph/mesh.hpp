// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "selgraph/geometry.hpp"

namespace selgraph {

/// Triangulated, textured surface. `face_uvs` holds one UV per face corner
/// and is empty when the source had no texture coordinates.
struct MeshSurface {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  std::vector<std::array<Vec2, 3>> face_uvs;
  std::vector<Vec3> face_normals;

  bool has_uvs() const { return !face_uvs.empty(); }
  double face_area(std::size_t f) const;
  double total_area() const;
  double bounding_diagonal() const;
  void validate() const;
};

/// Parses the v/vt/vn/f subset of Wavefront OBJ. Polygons are fan-triangulated;
/// other statements (mtllib, usemtl, o, g, s, comments) are ignored. Face
/// normals average the corner vn records when every corner has one, else
/// they follow the winding. Throws kParseError naming the offending line.
MeshSurface parse_obj(std::string_view text);

MeshSurface read_obj(const std::string& path);

/// Writes v, vt (one per face corner), vn (one per face) and f records.
/// A non-empty `material_library` adds mtllib/usemtl records; the caller
/// writes the material file itself.
std::string write_obj(const MeshSurface& mesh, std::string_view material_library = {},
                      std::string_view material = {});

}  // namespace selgraph
