// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace selgraph {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Polar/azimuth convention shared by every sphere routine: y is the polar
/// axis, polar angle phi is measured from +y and azimuth theta grows toward
/// the local east of the (0,1,0) up-vector frame.
inline Vec3 spherical_to_cartesian(double theta, double phi) {
  const double s = std::sin(phi);
  return {s * std::sin(theta), std::cos(phi), s * std::cos(theta)};
}

struct SphericalCoords {
  double theta;  // [0, 2pi)
  double phi;    // [0, pi]
};

inline SphericalCoords cartesian_to_spherical(const Vec3& p) {
  const double n = p.norm();
  double theta = std::atan2(p.x(), p.z());
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta -= kTwoPi;
  const double c = std::clamp(p.y() / n, -1.0, 1.0);
  return {theta, std::acos(c)};
}

/// Great-circle angle between two unit vectors; stable for tiny angles.
inline double angular_distance(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace selgraph
