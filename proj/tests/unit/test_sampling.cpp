// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "selgraph/error.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph {
namespace {

void expect_unit(const SphericalPointSet& s) {
  for (const auto& p : s.points) EXPECT_NEAR(p.norm(), 1.0, 1e-6);
}

TEST(Layering, HandEvaluatedRows) {
  // n_phi = 1: a = pi^2, d = pi, one row at pi/2 with round(2 pi / pi) = 2.
  EXPECT_EQ(layering_row_counts(1), (std::vector<std::uint32_t>{2}));
  // n_phi = 4: d_theta = pi/4, rows round(8 sin(phi)) at phi = (2m+1) pi / 8.
  std::vector<std::uint32_t> expect;
  for (int m = 0; m < 4; ++m) {
    expect.push_back(static_cast<std::uint32_t>(std::lround(8.0 * std::sin((2 * m + 1) * kPi / 8))));
  }
  EXPECT_EQ(expect, (std::vector<std::uint32_t>{3, 7, 7, 3}));
  EXPECT_EQ(layering_row_counts(4), expect);
  const auto s = sample_layering(4);
  EXPECT_EQ(s.size(), 20u);
  expect_unit(s);
}

TEST(Layering, RowsSymmetricAboutEquator) {
  for (std::uint32_t n : {3u, 8u, 17u, 64u}) {
    const auto rows = layering_row_counts(n);
    EXPECT_EQ(rows.size(), n);
    for (std::size_t m = 0; m < rows.size(); ++m) EXPECT_EQ(rows[m], rows[rows.size() - 1 - m]);
    expect_unit(sample_layering(n));
  }
}

TEST(Icosphere, VertexCountsAndEuler) {
  const std::uint32_t expect[] = {12, 42, 162, 642, 2562};
  for (std::uint32_t s = 0; s < 5; ++s) {
    const auto mesh = build_icosphere(s);
    EXPECT_EQ(mesh.vertices.size(), expect[s]);
    EXPECT_EQ(mesh.vertices.size(), 10u * (1u << (2 * s)) + 2u);
    // V - E + F = 2 with E = 3F/2.
    const long v = static_cast<long>(mesh.vertices.size());
    const long f = static_cast<long>(mesh.faces.size());
    EXPECT_EQ(v - 3 * f / 2 + f, 2);
    expect_unit(sample_icosphere(s));
  }
  try {
    sample_icosphere(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLimitExceeded);
  }
}

TEST(Fibonacci, CountsAndSpread) {
  EXPECT_EQ(sample_fibonacci(1).size(), 1u);
  EXPECT_NEAR(sample_fibonacci(1).points[0].y(), 0.0, 1e-15);
  const auto four = sample_fibonacci(4);
  std::set<std::tuple<double, double, double>> distinct;
  for (const auto& p : four.points) distinct.insert({p.x(), p.y(), p.z()});
  EXPECT_EQ(distinct.size(), 4u);

  const auto s = sample_fibonacci(1000);
  expect_unit(s);
  const double expected = std::sqrt(4.0 * kPi / 1000.0);
  double min_angle = 10.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      min_angle = std::min(min_angle, angular_distance(s.points[i], s.points[j]));
    }
  }
  EXPECT_GT(min_angle, 0.5 * expected);
}

TEST(Equirect, PixelCenters) {
  const auto two = sample_equirect(2, 1);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two.points[0].y(), 0.0, 1e-15);
  EXPECT_NEAR(two.points[0].dot(two.points[1]), -1.0, 1e-12);
  const auto s = sample_equirect(4, 2);
  ASSERT_EQ(s.size(), 8u);
  EXPECT_NEAR(s.points[0].y(), std::cos(kPi / 4), 1e-12);
  EXPECT_NEAR(s.points[7].y(), std::cos(3 * kPi / 4), 1e-12);
  EXPECT_EQ(sample_equirect(13, 7).size(), 91u);
}

TEST(Random, ReproducibleAndUniform) {
  const auto a = sample_random(10000, 42);
  const auto b = sample_random(10000, 42);
  EXPECT_EQ(a.points, b.points);
  expect_unit(a);
  Vec3 mean = Vec3::Zero();
  for (const auto& p : a.points) mean += p;
  // Each coordinate has variance 1/3; 3 sigma of the mean norm is well under 0.05.
  EXPECT_LT((mean / a.size()).norm(), 0.05);
  EXPECT_NE(sample_random(10, 1).points, sample_random(10, 2).points);
}

TEST(ClusterResample, MethodRules) {
  const auto ico = sample_icosphere(2);
  const auto [coarse, a] = cluster_resample(ico);
  EXPECT_EQ(coarse.size(), 42u);
  EXPECT_EQ(a.fine_count(), 162u);
  // Brute-force nearest with lowest-index ties.
  for (std::size_t i = 0; i < ico.size(); ++i) {
    std::uint32_t best = 0;
    double best_d = 1e9;
    for (std::uint32_t j = 0; j < coarse.size(); ++j) {
      const double d = (ico.points[i] - coarse.points[j]).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    EXPECT_EQ(a.parent[i], best);
  }

  EXPECT_EQ(cluster_resample(sample_layering(8)).first.params.n_phi, 4u);
  const auto fib = cluster_resample(sample_fibonacci(1000));
  EXPECT_EQ(fib.first.size(), 250u);
  EXPECT_DOUBLE_EQ(1000.0 / fib.second.coarse_count, 4.0);
  const auto eq = cluster_resample(sample_equirect(16, 8));
  EXPECT_EQ(eq.first.params.width, 8u);
  EXPECT_EQ(eq.first.params.height, 4u);
  const auto rnd = cluster_resample(sample_random(400, 9));
  EXPECT_EQ(rnd.first.params.seed, 10u);
  EXPECT_EQ(rnd.first.size(), 100u);

  EXPECT_THROW(cluster_resample(sample_icosphere(0)), Error);
  EXPECT_THROW(cluster_resample(sample_layering(4), 2), Error);
}

TEST(ClusterResample, CrossMethodAndBruteForce) {
  const auto fine = sample_fibonacci(4000);
  const auto [coarse, a] = cluster_resample(fine, 4, SamplingMethod::kRandom);
  EXPECT_EQ(coarse.params.method, SamplingMethod::kRandom);
  EXPECT_EQ(coarse.size(), 1000u);
  for (std::size_t i = 0; i < fine.size(); i += 7) {
    double best = 1e9;
    for (const auto& c : coarse.points) best = std::min(best, angular_distance(fine.points[i], c));
    EXPECT_NEAR(angular_distance(fine.points[i], coarse.points[a.parent[i]]), best, 1e-12);
  }
}

TEST(Resolution, Rules) {
  const auto spec = ResolutionSpec::from_fov(60.0 * kPi / 180.0, 240);
  EXPECT_NEAR(spec.delta_theta, 0.25 * kPi / 180.0, 1e-15);
  EXPECT_EQ(resolution_for(spec, SamplingMethod::kLayering).params.n_phi, 720u);
  EXPECT_EQ(resolution_for({kPi}, SamplingMethod::kLayering).params.n_phi, 1u);
  const double dt = 0.05;
  EXPECT_EQ(resolution_for({dt}, SamplingMethod::kFibonacci).params.count,
            static_cast<std::uint32_t>(std::lround(4 * kPi / (dt * dt))));
  const auto eq = resolution_for({kPi / 32}, SamplingMethod::kEquirect).params;
  EXPECT_EQ(eq.height, 32u);
  EXPECT_EQ(eq.width, 64u);
}

TEST(Resolution, IcosphereSmallestLevelWithinSpacing) {
  const double e4 = icosphere_edge_length(4);
  EXPECT_LT(icosphere_edge_length(5), e4);
  EXPECT_LT(e4, icosphere_edge_length(3));
  auto m = resolution_for({e4 * (1 + 1e-9)}, SamplingMethod::kIcosphere);
  EXPECT_EQ(m.params.subdivisions, 4u);
  EXPECT_DOUBLE_EQ(m.achieved_spacing, e4);
  m = resolution_for({e4 * (1 - 1e-9)}, SamplingMethod::kIcosphere);
  EXPECT_EQ(m.params.subdivisions, 5u);
}

TEST(Sampling, MethodNames) {
  EXPECT_EQ(parse_sampling_method("spiral"), SamplingMethod::kFibonacci);
  EXPECT_EQ(to_string(SamplingMethod::kLayering), "layering");
  EXPECT_THROW(parse_sampling_method("hexagonal"), Error);
}

}  // namespace
}  // namespace selgraph
