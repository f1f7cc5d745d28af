// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <cmath>

namespace fixture {
namespace {

using selgraph::Vec2;
using selgraph::Vec3;

// Face f: normal axis, normal sign, and the axes that grow with s (columns)
// and t (rows). Point = n_sign * e_axis + (2s - 1) e_u + (2t - 1) e_v.
struct FaceFrame {
  int axis;
  double sign;
  int u_axis;
  int v_axis;
};

constexpr FaceFrame kFaces[6] = {
    {0, +1.0, 2, 1}, {0, -1.0, 2, 1}, {1, +1.0, 0, 2},
    {1, -1.0, 0, 2}, {2, +1.0, 0, 1}, {2, -1.0, 0, 1},
};

Vec3 face_point(int f, double s, double t) {
  Vec3 p = Vec3::Zero();
  p[kFaces[f].axis] = kFaces[f].sign;
  p[kFaces[f].u_axis] = 2.0 * s - 1.0;
  p[kFaces[f].v_axis] = 2.0 * t - 1.0;
  return p;
}

}  // namespace

SeamedCube make_seamed_cube(int chart, int gutter) {
  SeamedCube cube;
  cube.chart = chart;
  cube.gutter = gutter;
  const int cell = chart + 2 * gutter;
  cube.width = 3 * cell;
  cube.height = 2 * cell;
  auto& mesh = cube.mesh;
  for (int f = 0; f < 6; ++f) {
    const int col0 = (f % 3) * cell + gutter;
    const int row0 = (f / 3) * cell + gutter;
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    std::array<Vec2, 4> uv;
    const double st[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int k = 0; k < 4; ++k) {
      mesh.vertices.push_back(face_point(f, st[k][0], st[k][1]));
      uv[k] = Vec2((col0 + st[k][0] * chart) / cube.width,
                   1.0 - (row0 + st[k][1] * chart) / cube.height);
    }
    Vec3 n = Vec3::Zero();
    n[kFaces[f].axis] = kFaces[f].sign;
    mesh.faces.push_back({base, base + 1, base + 2});
    mesh.faces.push_back({base, base + 2, base + 3});
    mesh.face_uvs.push_back({uv[0], uv[1], uv[2]});
    mesh.face_uvs.push_back({uv[0], uv[2], uv[3]});
    mesh.face_normals.push_back(n);
    mesh.face_normals.push_back(n);
  }
  return cube;
}

std::optional<std::array<int, 2>> SeamedCube::texel_of(const Vec3& p) const {
  const int cell = chart + 2 * gutter;
  for (int f = 0; f < 6; ++f) {
    if (std::abs(p[kFaces[f].axis] - kFaces[f].sign) > 1e-9) continue;
    const double s = (p[kFaces[f].u_axis] + 1.0) / 2.0;
    const double t = (p[kFaces[f].v_axis] + 1.0) / 2.0;
    const int c = std::min(chart - 1, static_cast<int>(std::floor(s * chart)));
    const int r = std::min(chart - 1, static_cast<int>(std::floor(t * chart)));
    return std::array<int, 2>{(f / 3) * cell + gutter + r, (f % 3) * cell + gutter + c};
  }
  return std::nullopt;
}

std::optional<Vec3> SeamedCube::point_of(int row, int col) const {
  const int cell = chart + 2 * gutter;
  const int fc = col / cell;
  const int fr = row / cell;
  const int c = col % cell - gutter;
  const int r = row % cell - gutter;
  if (fc > 2 || fr > 1 || c < 0 || c >= chart || r < 0 || r >= chart) return std::nullopt;
  return face_point(fr * 3 + fc, (c + 0.5) / chart, (r + 0.5) / chart);
}

selgraph::Image SeamedCube::paint(std::uint32_t channels, double gutter_value) const {
  selgraph::Image img(static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                      channels, gutter_value);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const auto p = point_of(r, c);
      if (!p) continue;
      for (std::uint32_t ch = 0; ch < channels; ++ch) {
        img.at(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), ch) = field(*p, ch);
      }
    }
  }
  return img;
}

std::vector<std::array<int, 4>> SeamedCube::seam_pairs() const {
  std::vector<std::array<int, 4>> out;
  const double inset = 1.0 - 1.0 / chart;  // texel center next to an edge
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const auto p = point_of(r, c);
      if (!p) continue;
      int axis = -1;
      int edge_axes = 0;
      int normal_axis = -1;
      for (int a = 0; a < 3; ++a) {
        if (std::abs(std::abs((*p)[a]) - 1.0) < 1e-12) {
          normal_axis = a;
        } else if (std::abs(std::abs((*p)[a]) - inset) < 1e-9) {
          axis = a;
          ++edge_axes;
        }
      }
      if (edge_axes != 1) continue;  // interior or corner texel
      Vec3 q = *p;
      q[axis] = (*p)[axis] > 0 ? 1.0 : -1.0;
      q[normal_axis] = (*p)[normal_axis] > 0 ? inset : -inset;
      const auto t = texel_of(q);
      if (t) out.push_back({r, c, (*t)[0], (*t)[1]});
    }
  }
  return out;
}

std::vector<std::array<int, 4>> SeamedCube::interior_pairs() const {
  std::vector<std::array<int, 4>> out;
  const int cell = chart + 2 * gutter;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (!point_of(r, c)) continue;
      if (c + 1 < width && point_of(r, c + 1) && (c + 1) / cell == c / cell) {
        out.push_back({r, c, r, c + 1});
      }
      if (r + 1 < height && point_of(r + 1, c) && (r + 1) / cell == r / cell) {
        out.push_back({r, c, r + 1, c});
      }
    }
  }
  return out;
}

double field(const Vec3& p, std::uint32_t channel) {
  const double k = 1.0 + 0.37 * channel;
  return 0.5 + 0.22 * std::sin(2.1 * k * p.x() + 1.3 * p.y() + 0.4 * channel) +
         0.18 * std::cos(1.7 * p.y() - 2.3 * k * p.z()) + 0.08 * std::sin(3.1 * p.z() + 2.0 * p.x());
}

}  // namespace fixture
