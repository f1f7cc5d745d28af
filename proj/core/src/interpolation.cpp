// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/interpolation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "selgraph/error.hpp"

namespace selgraph {
namespace {

constexpr double kAlignmentSnap = 1e-12;

// Direction k (0..7, counter-clockwise from east in 45 degree steps).
Selection direction_selection(int k) { return static_cast<Selection>(1 + (k & 7)); }

}  // namespace

std::string_view to_string(InterpolationScheme scheme) {
  return scheme == InterpolationScheme::kAngular ? "angular" : "barycentric";
}

InterpolationScheme parse_interpolation_scheme(std::string_view name) {
  if (name == "angular") return InterpolationScheme::kAngular;
  if (name == "barycentric") return InterpolationScheme::kBarycentric;
  fail(ErrorCode::kInvalidArgument, "unknown interpolation scheme '" + std::string(name) + "'");
}

double InterpolationResult::total() const {
  double t = 0.0;
  for (const auto& e : *this) t += e.weight;
  return t;
}

double InterpolationResult::weight_of(Selection s) const {
  for (const auto& e : *this) {
    if (e.selection == s) return e.weight;
  }
  return 0.0;
}

InterpolationResult angular_weights(const Vec2& offset) {
  if (!(offset.norm() > std::numeric_limits<double>::epsilon())) {
    fail(ErrorCode::kZeroVector, "angular interpolation needs a nonzero offset");
  }
  double angle = std::atan2(offset.y(), offset.x());
  if (angle < 0.0) angle += kTwoPi;
  // Position measured in sectors of 45 degrees; the fractional part is the
  // angle to the lower flanking direction over the angle between the two.
  double t = angle / (kPi / 4.0);
  // Offsets along a kernel direction must not leak round-off weight onto the
  // neighboring direction.
  if (std::abs(t - std::round(t)) < kAlignmentSnap) t = std::round(t);
  if (t >= 8.0) t -= 8.0;
  int k = static_cast<int>(std::floor(t));
  if (k > 7) k = 7;
  double frac = t - k;
  // Same tolerance at the bisector, so symmetric offsets split exactly in half.
  if (std::abs(frac - 0.5) < kAlignmentSnap) frac = 0.5;

  InterpolationResult r;
  r.add(direction_selection(k), 1.0 - frac);
  r.add(direction_selection(k + 1), frac);
  return r;
}

InterpolationResult barycentric_weights(const Vec2& offset, double spacing) {
  if (!(spacing > 0.0)) {
    fail(ErrorCode::kNonPositiveSpacing, "barycentric interpolation needs spacing > 0");
  }
  Vec2 p = offset;
  const double extent = p.cwiseAbs().maxCoeff();
  if (extent > spacing) p *= spacing / extent;

  const double ax = std::abs(p.x());
  const double ay = std::abs(p.y());
  const double u = std::max(ax, ay);
  const double v = std::min(ax, ay);

  Selection cardinal;
  if (ax >= ay) {
    cardinal = p.x() >= 0.0 ? Selection::kE : Selection::kW;
  } else {
    cardinal = p.y() >= 0.0 ? Selection::kN : Selection::kS;
  }
  Selection ordinal;
  if (p.x() >= 0.0) {
    ordinal = p.y() >= 0.0 ? Selection::kNE : Selection::kSE;
  } else {
    ordinal = p.y() >= 0.0 ? Selection::kNW : Selection::kSW;
  }

  const double w_center = 1.0 - u / spacing;
  const double w_cardinal = (u - v) / spacing;
  const double w_ordinal = v / spacing;

  InterpolationResult r;
  if (w_center > 0.0) r.add(Selection::kCenter, w_center);
  if (w_cardinal > 0.0) r.add(cardinal, w_cardinal);
  if (w_ordinal > 0.0) r.add(ordinal, w_ordinal);
  return r;
}

InterpolationResult assign_selections(const Vec2& offset, InterpolationScheme scheme,
                                      double spacing) {
  switch (scheme) {
    case InterpolationScheme::kAngular: return angular_weights(offset);
    case InterpolationScheme::kBarycentric: return barycentric_weights(offset, spacing);
  }
  fail(ErrorCode::kInvalidArgument, "unknown interpolation scheme");
}

}  // namespace selgraph
