// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "selgraph/error.hpp"
#include "selgraph/interpolation.hpp"

namespace selgraph {
namespace {

Vec2 at_degrees(double deg) {
  const double a = deg * kPi / 180.0;
  return {std::cos(a), std::sin(a)};
}

TEST(Angular, AlignedKeepsZeroSecondEntry) {
  const auto r = angular_weights({1.0, 0.0});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].selection, Selection::kE);
  EXPECT_EQ(r[0].weight, 1.0);
  EXPECT_EQ(r[1].selection, Selection::kNE);
  EXPECT_EQ(r[1].weight, 0.0);
}

TEST(Angular, HalfwayIsExactlySymmetric) {
  const auto r = angular_weights(at_degrees(22.5));
  EXPECT_EQ(r.weight_of(Selection::kE), 0.5);
  EXPECT_EQ(r.weight_of(Selection::kNE), 0.5);
}

TEST(Angular, FifteenDegrees) {
  // theta_a = 15, theta_b = 30: w_a = 30 / 45.
  const auto r = angular_weights(at_degrees(15.0));
  EXPECT_NEAR(r.weight_of(Selection::kE), 30.0 / 45.0, 1e-12);
  EXPECT_NEAR(r.weight_of(Selection::kNE), 15.0 / 45.0, 1e-12);
}

TEST(Angular, ExactDiagonalsDoNotLeak) {
  const Selection diag[4] = {Selection::kNE, Selection::kNW, Selection::kSW, Selection::kSE};
  const Vec2 p[4] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  for (int i = 0; i < 4; ++i) {
    const auto r = angular_weights(p[i]);
    EXPECT_EQ(r.weight_of(diag[i]), 1.0) << i;
  }
}

TEST(Angular, WrapsFromSouthEastToEast) {
  const auto r = angular_weights(at_degrees(350.0));
  EXPECT_NEAR(r.weight_of(Selection::kE), 35.0 / 45.0, 1e-12);
  EXPECT_NEAR(r.weight_of(Selection::kSE), 10.0 / 45.0, 1e-12);
  EXPECT_EQ(r.weight_of(Selection::kCenter), 0.0);
}

TEST(Angular, ZeroOffsetThrows) {
  try {
    angular_weights({0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(Angular, PartitionOfUnitySweep) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  for (int i = 0; i < 5000; ++i) {
    const auto r = angular_weights(at_degrees(angle(rng)) * 3.7);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_NEAR(r.total(), 1.0, 1e-12);
    for (const auto& e : r) {
      EXPECT_GE(e.weight, 0.0);
      EXPECT_LE(e.weight, 1.0);
      EXPECT_NE(e.selection, Selection::kCenter);
    }
  }
}

TEST(Barycentric, SpecExamples) {
  auto r = barycentric_weights({0.0, 0.0}, 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.weight_of(Selection::kCenter), 1.0);

  r = barycentric_weights({2.5, 0.0}, 2.5);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.weight_of(Selection::kE), 1.0);

  r = assign_selections({0.7, 0.7}, InterpolationScheme::kBarycentric, 0.7);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.weight_of(Selection::kNE), 1.0);
}

TEST(Barycentric, MatchesLinearSystemAtHandPoints) {
  const Vec2 pts[2] = {{0.5, 0.25}, {-0.25, 0.5}};
  for (const auto& p : pts) {
    const auto r = barycentric_weights(p, 1.0);
    const auto expect = oracle::barycentric_solve(p.x(), p.y(), 1.0);
    for (std::uint8_t m = 0; m < kSelectionCount; ++m) {
      EXPECT_NEAR(r.weight_of(static_cast<Selection>(m)), expect[m], 1e-12);
    }
  }
  // And the literal values.
  const auto a = barycentric_weights({0.5, 0.25}, 1.0);
  EXPECT_NEAR(a.weight_of(Selection::kCenter), 0.5, 1e-15);
  EXPECT_NEAR(a.weight_of(Selection::kE), 0.25, 1e-15);
  EXPECT_NEAR(a.weight_of(Selection::kNE), 0.25, 1e-15);
  const auto b = barycentric_weights({-0.25, 0.5}, 1.0);
  EXPECT_NEAR(b.weight_of(Selection::kN), 0.25, 1e-15);
  EXPECT_NEAR(b.weight_of(Selection::kNW), 0.25, 1e-15);
}

TEST(Barycentric, EightfoldSymmetry) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    auto sorted = [](const InterpolationResult& r) {
      std::array<double, 3> w{0, 0, 0};
      for (std::size_t k = 0; k < r.size(); ++k) w[k] = r[k].weight;
      std::sort(w.begin(), w.end());
      return w;
    };
    const auto ref = sorted(barycentric_weights({x, y}, 1.0));
    const Vec2 images[8] = {{x, y}, {-x, y}, {x, -y}, {-x, -y}, {y, x}, {-y, x}, {y, -x}, {-y, -x}};
    for (const auto& p : images) {
      const auto w = sorted(barycentric_weights(p, 1.0));
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(w[k], ref[k], 1e-12);
    }
  }
}

TEST(Barycentric, OutsideSquareIsClamped) {
  // (3, 1) with d = 1 scales to (1, 1/3): center 0, E 2/3, NE 1/3.
  const auto r = barycentric_weights({3.0, 1.0}, 1.0);
  EXPECT_NEAR(r.weight_of(Selection::kE), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.weight_of(Selection::kNE), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.weight_of(Selection::kCenter), 0.0, 1e-12);
}

TEST(Barycentric, NonPositiveSpacingThrows) {
  for (double d : {0.0, -1.0}) {
    try {
      barycentric_weights({0.1, 0.1}, d);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNonPositiveSpacing);
    }
  }
}

TEST(Interpolation, SchemeNames) {
  EXPECT_EQ(parse_interpolation_scheme("angular"), InterpolationScheme::kAngular);
  EXPECT_EQ(parse_interpolation_scheme("barycentric"), InterpolationScheme::kBarycentric);
  EXPECT_EQ(to_string(InterpolationScheme::kBarycentric), "barycentric");
  EXPECT_THROW(parse_interpolation_scheme("bilinear"), Error);
}

}  // namespace
}  // namespace selgraph
