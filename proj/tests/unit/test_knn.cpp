// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "selgraph/knn.hpp"

namespace selgraph {
namespace {

std::vector<Vec3> cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> p(n);
  for (auto& v : p) v = Vec3(u(rng), u(rng), u(rng));
  return p;
}

TEST(KdTree, MatchesBruteForce) {
  const auto pts = cloud(2000, 1);
  KdTree tree(pts);
  const auto queries = cloud(200, 2);
  for (const auto& q : queries) {
    std::vector<std::pair<double, std::uint32_t>> all;
    for (std::uint32_t i = 0; i < pts.size(); ++i) all.push_back({(pts[i] - q).squaredNorm(), i});
    std::sort(all.begin(), all.end());
    const auto got = tree.knn(q, 10);
    ASSERT_EQ(got.size(), 10u);
    for (std::size_t k = 0; k < 10; ++k) {
      EXPECT_EQ(got[k].index, all[k].second);
      EXPECT_EQ(got[k].dist2, all[k].first);
    }
    EXPECT_EQ(tree.nearest(q).index, all[0].second);
  }
}

TEST(KdTree, TiesResolveToLowestIndex) {
  std::vector<Vec3> pts = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0)};
  KdTree tree(pts);
  const auto r = tree.knn(Vec3::Zero(), 4);
  for (std::uint32_t i = 0; i < 4; ++i) EXPECT_EQ(r[i].index, i);
}

TEST(KdTree, ExcludeAndShortClouds) {
  const auto pts = cloud(5, 3);
  KdTree tree(pts);
  const auto r = tree.knn(pts[2], 10, 2u);
  EXPECT_EQ(r.size(), 4u);
  for (const auto& n : r) EXPECT_NE(n.index, 2u);
}

TEST(KnnAll, ExcludesSelf) {
  const auto pts = cloud(300, 4);
  const auto all = knn_all(pts, 8);
  ASSERT_EQ(all.size(), pts.size());
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(all[i].size(), 8u);
    for (const auto& n : all[i]) EXPECT_NE(n.index, i);
  }
  double mean = 0.0;
  for (const auto& nb : all) mean += std::sqrt(nb.front().dist2);
  EXPECT_NEAR(mean_nearest_distance(pts), mean / pts.size(), 1e-12);
}

}  // namespace
}  // namespace selgraph
