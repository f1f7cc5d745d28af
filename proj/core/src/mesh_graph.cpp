// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/mesh_graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "selgraph/error.hpp"
#include "selgraph/knn.hpp"
#include "selgraph/sphere_graph.hpp"

namespace selgraph {
namespace {

constexpr double kExactHit = 1e-12;
constexpr double kInsideTolerance = 1e-9;

// Barycentric coordinates of p in the UV triangle, nullopt when degenerate.
std::optional<Vec3> uv_barycentric(const std::array<Vec2, 3>& t, const Vec2& p) {
  const Vec2 e0 = t[1] - t[0];
  const Vec2 e1 = t[2] - t[0];
  const double det = e0.x() * e1.y() - e0.y() * e1.x();
  if (std::abs(det) < 1e-15) return std::nullopt;
  const Vec2 d = p - t[0];
  const double b1 = (d.x() * e1.y() - d.y() * e1.x()) / det;
  const double b2 = (e0.x() * d.y() - e0.y() * d.x()) / det;
  return Vec3(1.0 - b1 - b2, b1, b2);
}

}  // namespace

std::vector<SurfaceSample> sample_surface(const MeshSurface& mesh, std::uint32_t count,
                                          std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  if (mesh.faces.empty()) fail(ErrorCode::kDegenerateMesh, "mesh has no faces");
  std::vector<double> cumulative(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    total += mesh.face_area(f);
    cumulative[f] = total;
  }
  if (!(total > 0.0)) fail(ErrorCode::kDegenerateMesh, "mesh has zero surface area");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SurfaceSample> out;
  out.reserve(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    const double pick = unit(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const auto f = static_cast<std::uint32_t>(it - cumulative.begin());
    const double r1 = std::sqrt(unit(rng));
    const double r2 = unit(rng);
    const Vec3 b(1.0 - r1, r1 * (1.0 - r2), r1 * r2);
    const auto& tri = mesh.faces[f];
    SurfaceSample sample;
    sample.face = f;
    sample.position = b[0] * mesh.vertices[tri[0]] + b[1] * mesh.vertices[tri[1]] +
                      b[2] * mesh.vertices[tri[2]];
    sample.normal = mesh.face_normals[f];
    if (mesh.has_uvs()) {
      const auto& uv = mesh.face_uvs[f];
      sample.uv = b[0] * uv[0] + b[1] * uv[1] + b[2] * uv[2];
    } else {
      sample.uv = Vec2::Zero();
    }
    out.push_back(sample);
  }
  return out;
}

Vec3 random_up_vector(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    if (v.norm() > 1e-9) return v.normalized();
  }
}

GraphLevel build_mesh_level(const std::vector<SurfaceSample>& samples, std::size_t k,
                            InterpolationScheme scheme, const Vec3& up) {
  if (samples.size() < k + 1) {
    fail(ErrorCode::kTooFewPoints, std::to_string(samples.size()) +
                                       " samples, need k+1 = " + std::to_string(k + 1));
  }
  GraphLevel level;
  auto& nodes = level.nodes;
  nodes.positions.reserve(samples.size());
  for (const auto& s : samples) {
    nodes.positions.push_back(s.position);
    nodes.normals.push_back(s.normal);
    nodes.uvs.push_back(s.uv);
  }
  level.spacing = mean_nearest_distance(nodes.positions);
  if (!(level.spacing > 0.0)) {
    fail(ErrorCode::kDegenerateMesh, "samples coincide; spacing is zero");
  }
  auto neighbors = knn_all(nodes.positions, k);
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    auto& nb = neighbors[i];
    nb.erase(std::remove_if(nb.begin(), nb.end(),
                            [&](const Neighbor& n) {
                              return nodes.normals[i].dot(nodes.normals[n.index]) < kFoldCosine;
                            }),
             nb.end());
  }
  level.edges = build_selection_edges(nodes.positions, nodes.normals, neighbors,
                                      std::span<const Vec3>(&up, 1), scheme, level.spacing);
  return level;
}

MeshPyramid build_mesh_pyramid(const MeshSurface& mesh, const std::vector<SurfaceSample>& samples,
                               const MeshGraphOptions& options) {
  if (options.levels < 1) fail(ErrorCode::kInvalidArgument, "levels must be >= 1");
  if (options.k < 1) fail(ErrorCode::kInvalidArgument, "k must be >= 1");
  MeshPyramid out;
  out.up = options.up ? options.up->normalized() : random_up_vector(options.seed);
  if (options.up && !(options.up->norm() > 0.0)) {
    fail(ErrorCode::kZeroVector, "up-vector must be non-zero");
  }
  out.pyramid.domain = "mesh";
  out.samples.push_back(samples);
  for (std::size_t l = 1; l < options.levels; ++l) {
    const auto& fine = out.samples.back();
    const auto count = static_cast<std::uint32_t>(fine.size() / 4);
    if (count < options.k + 1) {
      fail(ErrorCode::kTooFewPoints, "level " + std::to_string(l) + " would have " +
                                         std::to_string(count) + " samples");
    }
    auto coarse = sample_surface(mesh, count, options.seed + l);
    std::vector<Vec3> coarse_pos;
    coarse_pos.reserve(coarse.size());
    for (const auto& s : coarse) coarse_pos.push_back(s.position);
    KdTree tree(coarse_pos);
    ClusterAssignment a;
    a.coarse_count = count;
    a.parent.reserve(fine.size());
    for (const auto& s : fine) a.parent.push_back(tree.nearest(s.position).index);
    out.pyramid.assignments.push_back(std::move(a));
    out.samples.push_back(std::move(coarse));
  }
  for (const auto& level_samples : out.samples) {
    out.pyramid.levels.push_back(
        build_mesh_level(level_samples, options.k, options.scheme, out.up));
  }
  return out;
}

FeatureMatrix texture_to_features(const Image& texture, const MeshSurface& mesh,
                                  const std::vector<SurfaceSample>& samples) {
  if (!mesh.has_uvs()) fail(ErrorCode::kMissingUV, "mesh has no texture coordinates");
  texture.validate();
  FeatureMatrix features(static_cast<Eigen::Index>(samples.size()), texture.channels);
  std::vector<double> px(texture.channels);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i].uv.x() * texture.width;
    const double y = (1.0 - samples[i].uv.y()) * texture.height;
    sample_bilinear(texture, x, y, /*wrap_x=*/false, px.data());
    for (std::uint32_t c = 0; c < texture.channels; ++c) {
      features(static_cast<Eigen::Index>(i), c) = px[c];
    }
  }
  return features;
}

std::vector<std::int32_t> texel_faces(const MeshSurface& mesh, std::uint32_t width,
                                      std::uint32_t height) {
  if (!mesh.has_uvs()) fail(ErrorCode::kMissingUV, "mesh has no texture coordinates");
  std::vector<std::int32_t> owner(static_cast<std::size_t>(width) * height, -1);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& uv = mesh.face_uvs[f];
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& t : uv) {
      x0 = std::min(x0, t.x() * width);
      x1 = std::max(x1, t.x() * width);
      y0 = std::min(y0, (1.0 - t.y()) * height);
      y1 = std::max(y1, (1.0 - t.y()) * height);
    }
    const auto c0 = static_cast<std::int64_t>(std::max(0.0, std::floor(x0 - 0.5)));
    const auto c1 = std::min<std::int64_t>(width - 1, static_cast<std::int64_t>(std::ceil(x1)));
    const auto r0 = static_cast<std::int64_t>(std::max(0.0, std::floor(y0 - 0.5)));
    const auto r1 = std::min<std::int64_t>(height - 1, static_cast<std::int64_t>(std::ceil(y1)));
    for (std::int64_t r = r0; r <= r1; ++r) {
      for (std::int64_t c = c0; c <= c1; ++c) {
        auto& slot = owner[static_cast<std::size_t>(r) * width + c];
        if (slot >= 0) continue;
        const Vec2 p((c + 0.5) / width, 1.0 - (r + 0.5) / height);
        const auto b = uv_barycentric(uv, p);
        if (b && b->minCoeff() >= -kInsideTolerance) slot = static_cast<std::int32_t>(f);
      }
    }
  }
  return owner;
}

Image features_to_texture(const FeatureMatrix& features, const std::vector<SurfaceSample>& samples,
                          const MeshSurface& mesh, const Image& original, std::size_t neighbors) {
  if (static_cast<std::size_t>(features.rows()) != samples.size()) {
    fail(ErrorCode::kShapeError, "feature rows do not match the sample count");
  }
  if (static_cast<std::uint32_t>(features.cols()) != original.channels) {
    fail(ErrorCode::kShapeError, "feature channels do not match the texture");
  }
  if (samples.empty()) return original;
  const std::uint32_t w = original.width;
  const std::uint32_t h = original.height;
  const auto owner = texel_faces(mesh, w, h);
  std::vector<Vec3> positions;
  positions.reserve(samples.size());
  for (const auto& s : samples) positions.push_back(s.position);
  KdTree tree(positions);
  const std::size_t k = std::min(neighbors, samples.size());

  Image out = original;
  for (std::uint32_t r = 0; r < h; ++r) {
    for (std::uint32_t c = 0; c < w; ++c) {
      const auto f = owner[static_cast<std::size_t>(r) * w + c];
      if (f < 0) continue;
      const auto& uv = mesh.face_uvs[f];
      const Vec2 p((c + 0.5) / w, 1.0 - (r + 0.5) / h);
      const Vec3 b = *uv_barycentric(uv, p);
      const auto& tri = mesh.faces[f];
      const Vec3 x = b[0] * mesh.vertices[tri[0]] + b[1] * mesh.vertices[tri[1]] +
                     b[2] * mesh.vertices[tri[2]];
      const auto nearest = tree.knn(x, k);
      Eigen::RowVectorXd value = Eigen::RowVectorXd::Zero(features.cols());
      if (std::sqrt(nearest.front().dist2) < kExactHit) {
        value = features.row(nearest.front().index);
      } else {
        double total = 0.0;
        for (const auto& nb : nearest) {
          const double wgt = 1.0 / std::sqrt(nb.dist2);
          value += wgt * features.row(nb.index);
          total += wgt;
        }
        value /= total;
      }
      for (std::uint32_t ch = 0; ch < original.channels; ++ch) out.at(r, c, ch) = value[ch];
    }
  }
  return out;
}

}  // namespace selgraph
