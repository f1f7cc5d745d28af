// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/sphere_graph.hpp"

#include <cmath>
#include <string>

#include "selgraph/error.hpp"

namespace selgraph {
namespace {

constexpr double kDegenerateCross = 1e-6;
constexpr double kCollapseFraction = 0.1;
constexpr double kExactHit = 1e-12;

}  // namespace

Mat3 LocalFrame::rotation() const {
  Mat3 r;
  r.row(0) = x_hat.transpose();
  r.row(1) = y_hat.transpose();
  r.row(2) = z_hat.transpose();
  return r;
}

Vec2 LocalFrame::project(const Vec3& offset) const {
  return {x_hat.dot(offset), y_hat.dot(offset)};
}

LocalFrame local_frame(const Vec3& normal, const Vec3& up) {
  LocalFrame f;
  f.z_hat = normal.normalized();
  Vec3 x = up.cross(f.z_hat);
  if (x.norm() < kDegenerateCross) x = kFallbackUp.cross(f.z_hat);
  f.x_hat = x.normalized();
  f.y_hat = f.z_hat.cross(f.x_hat);
  return f;
}

InterpolationResult spherical_selection(const Vec3& xi, const Vec3& xj, const LocalFrame& frame_i,
                                        InterpolationScheme scheme, double spacing) {
  const Vec3 diff = xj - xi;
  if (diff.norm() < kCollapseFraction * spacing) {
    InterpolationResult r;
    r.add(Selection::kCenter, 1.0);
    return r;
  }
  return assign_selections(frame_i.project(diff), scheme, spacing);
}

SelectionEdges build_selection_edges(std::span<const Vec3> positions,
                                     std::span<const Vec3> normals,
                                     const std::vector<std::vector<Neighbor>>& neighbors,
                                     std::span<const Vec3> ups, InterpolationScheme scheme,
                                     double spacing) {
  const std::size_t n = positions.size();
  if (normals.size() != n || neighbors.size() != n || (ups.size() != 1 && ups.size() != n)) {
    fail(ErrorCode::kShapeError, "selection edge inputs have mismatched lengths");
  }
  if (!(spacing > 0.0)) fail(ErrorCode::kNonPositiveSpacing, "level spacing must be positive");

  SelectionEdges edges;
  std::size_t expected = n;
  for (const auto& nb : neighbors) expected += 2 * nb.size();
  edges.reserve(expected);
  for (std::uint32_t i = 0; i < n; ++i) {
    const LocalFrame frame = local_frame(normals[i], ups.size() == 1 ? ups[0] : ups[i]);
    edges.push(i, i, Selection::kCenter, 1.0);
    for (const auto& nb : neighbors[i]) {
      const auto r = spherical_selection(positions[i], positions[nb.index], frame, scheme, spacing);
      for (const auto& e : r) edges.push(nb.index, i, e.selection, e.weight);
    }
  }
  return add_replicate_padding(normalize_rows(normalize_interpolation(edges)), n);
}

SphereGraphOptions default_sphere_options() { return {}; }

SpherePyramid build_sphere_pyramid(const SphericalPointSet& points,
                                   const SphereGraphOptions& options) {
  if (options.levels < 1) fail(ErrorCode::kInvalidArgument, "levels must be >= 1");
  if (options.k < 1) fail(ErrorCode::kInvalidArgument, "k must be >= 1");

  SpherePyramid out;
  out.pyramid.domain = "sphere";
  out.point_sets.push_back(points);
  for (std::size_t l = 1; l < options.levels; ++l) {
    auto [coarse, assignment] = cluster_resample(out.point_sets.back(), 4, options.clustering);
    out.pyramid.assignments.push_back(std::move(assignment));
    out.point_sets.push_back(std::move(coarse));
  }

  for (std::size_t l = 0; l < out.point_sets.size(); ++l) {
    const auto& pts = out.point_sets[l].points;
    if (pts.size() < options.k + 1) {
      fail(ErrorCode::kTooFewPoints, "level " + std::to_string(l) + " has " +
                                         std::to_string(pts.size()) + " points, need k+1 = " +
                                         std::to_string(options.k + 1));
    }
    GraphLevel level;
    level.nodes.positions = pts;
    level.nodes.normals.reserve(pts.size());
    for (const auto& p : pts) level.nodes.normals.push_back(p.normalized());
    level.spacing = mean_nearest_distance(pts);
    const auto neighbors = knn_all(pts, options.k);
    const Vec3 up = kDefaultUp;
    level.edges = build_selection_edges(pts, level.nodes.normals, neighbors,
                                        std::span<const Vec3>(&up, 1), options.scheme,
                                        level.spacing);
    out.pyramid.levels.push_back(std::move(level));
  }
  return out;
}

GraphPyramid build_sphere_graph(const SphericalPointSet& points,
                                const SphereGraphOptions& options) {
  return build_sphere_pyramid(points, options).pyramid;
}

FeatureMatrix image_to_features(const EquirectImage& image, std::span<const Vec3> points) {
  image.validate();
  if (image.width == 0 || image.height == 0) fail(ErrorCode::kShapeError, "empty image");
  FeatureMatrix features(static_cast<Eigen::Index>(points.size()), image.channels);
  std::vector<double> px(image.channels);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto sc = cartesian_to_spherical(points[i]);
    const double x = sc.theta / kTwoPi * image.width;
    const double y = sc.phi / kPi * image.height;
    sample_bilinear(image, x, y, /*wrap_x=*/true, px.data());
    for (std::uint32_t c = 0; c < image.channels; ++c) {
      features(static_cast<Eigen::Index>(i), c) = px[c];
    }
  }
  return features;
}

EquirectImage features_to_image(const FeatureMatrix& features, std::span<const Vec3> points,
                                std::uint32_t width, std::uint32_t height,
                                std::size_t neighbors) {
  if (static_cast<std::size_t>(features.rows()) != points.size()) {
    fail(ErrorCode::kShapeError, "feature rows do not match the point count");
  }
  if (points.empty()) fail(ErrorCode::kTooFewPoints, "cannot render an empty point set");
  const auto channels = static_cast<std::uint32_t>(features.cols());
  EquirectImage image(width, height, channels);
  KdTree tree(points);
  const std::size_t k = std::min(neighbors, points.size());
  for (std::uint32_t r = 0; r < height; ++r) {
    const double phi = kPi * (r + 0.5) / height;
    for (std::uint32_t c = 0; c < width; ++c) {
      const Vec3 dir = spherical_to_cartesian(kTwoPi * (c + 0.5) / width, phi);
      const auto nearest = tree.knn(dir, k);
      Eigen::RowVectorXd value = Eigen::RowVectorXd::Zero(channels);
      if (std::sqrt(nearest.front().dist2) < kExactHit) {
        value = features.row(nearest.front().index);
      } else {
        double total = 0.0;
        for (const auto& nb : nearest) {
          const double w = 1.0 / std::sqrt(nb.dist2);
          value += w * features.row(nb.index);
          total += w;
        }
        value /= total;
      }
      for (std::uint32_t ch = 0; ch < channels; ++ch) image.at(r, c, ch) = value[ch];
    }
  }
  return image;
}

}  // namespace selgraph
