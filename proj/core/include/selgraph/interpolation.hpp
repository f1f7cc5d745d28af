// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Splits a local 2D offset between kernel taps.
//
// Angular: the offset is shared by the two non-center directions that flank
// its angle, each weighted by the angle to the *other* direction.
//
// Barycentric: the offset is located in one of the eight right triangles
// (legs of length d) tiling the 3x3 kernel square, and weighted between the
// center, the cardinal and the ordinal corner of that triangle.

#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "selgraph/geometry.hpp"
#include "selgraph/graph.hpp"

namespace selgraph {

enum class InterpolationScheme { kAngular, kBarycentric };

std::string_view to_string(InterpolationScheme scheme);
InterpolationScheme parse_interpolation_scheme(std::string_view name);

struct SelectionWeight {
  Selection selection;
  double weight;
};

struct InterpolationResult {
  std::array<SelectionWeight, 3> entries{};
  std::size_t count = 0;

  void add(Selection s, double w) { entries[count++] = {s, w}; }
  std::size_t size() const { return count; }
  const SelectionWeight* begin() const { return entries.data(); }
  const SelectionWeight* end() const { return entries.data() + count; }
  const SelectionWeight& operator[](std::size_t i) const { return entries[i]; }

  double total() const;
  /// Weight assigned to `s`, 0 when absent.
  double weight_of(Selection s) const;
};

/// Two-entry split between the flanking directions. An exactly aligned offset
/// keeps a zero-weight second entry. Throws kZeroVector for a zero offset.
InterpolationResult angular_weights(const Vec2& offset);

/// Triangle split for kernel spacing d. Offsets outside the kernel square are
/// scaled back onto its boundary first. Zero weights are omitted, so the
/// result has one to three entries. Throws kNonPositiveSpacing when d <= 0.
InterpolationResult barycentric_weights(const Vec2& offset, double spacing);

InterpolationResult assign_selections(const Vec2& offset, InterpolationScheme scheme,
                                      double spacing);

}  // namespace selgraph
