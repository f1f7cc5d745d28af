// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "selgraph/error.hpp"

namespace selgraph {
namespace {

constexpr std::uint32_t kLeafSize = 12;

bool closer(const Neighbor& a, const Neighbor& b) {
  return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
}

// Bounded candidate list kept sorted; k is small (<= a few dozen).
class Candidates {
 public:
  explicit Candidates(std::size_t k) : k_(k) { items_.reserve(k + 1); }

  bool full() const { return items_.size() == k_; }
  double worst() const {
    return full() ? items_.back().dist2 : std::numeric_limits<double>::infinity();
  }

  void offer(const Neighbor& n) {
    if (full() && !closer(n, items_.back())) return;
    auto it = std::upper_bound(items_.begin(), items_.end(), n, closer);
    items_.insert(it, n);
    if (items_.size() > k_) items_.pop_back();
  }

  std::vector<Neighbor> take() { return std::move(items_); }

 private:
  std::size_t k_;
  std::vector<Neighbor> items_;
};

}  // namespace

KdTree::KdTree(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
  if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::kLimitExceeded, "too many points for the kd-tree");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(points_.size()), 0);
  }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end, int depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= kLeafSize) return id;

  // Split on the axis of largest extent.
  Vec3 lo = points_[order_[begin]];
  Vec3 hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  Eigen::Index axis = 0;
  (hi - lo).maxCoeff(&axis);
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double va = points_[a][axis];
                     const double vb = points_[b][axis];
                     return va < vb || (va == vb && a < b);
                   });
  const double split = points_[order_[mid]][axis];
  const auto left = build(begin, mid, depth + 1);
  const auto right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  nodes_[id].axis = static_cast<std::uint8_t>(axis);
  nodes_[id].split = split;
  return id;
}

std::vector<Neighbor> KdTree::knn(const Vec3& query, std::size_t k,
                                  std::optional<std::uint32_t> exclude) const {
  Candidates best(k);
  if (k == 0 || nodes_.empty()) return {};

  struct Pending {
    std::int32_t node;
    double bound;  // lower bound of squared distance to the node's region
  };
  std::vector<Pending> stack;
  stack.push_back({0, 0.0});
  while (!stack.empty()) {
    const Pending cur = stack.back();
    stack.pop_back();
    if (cur.bound > best.worst()) continue;
    const Node& node = nodes_[cur.node];
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t idx = order_[i];
        if (exclude && *exclude == idx) continue;
        best.offer({idx, (points_[idx] - query).squaredNorm()});
      }
      continue;
    }
    const double diff = query[node.axis] - node.split;
    const double far_bound = std::max(cur.bound, diff * diff);
    // Points equal to the split value can sit on either side, so both
    // children are searched with `>` pruning only.
    if (diff < 0.0) {
      stack.push_back({node.right, far_bound});
      stack.push_back({node.left, cur.bound});
    } else {
      stack.push_back({node.left, far_bound});
      stack.push_back({node.right, cur.bound});
    }
  }
  return best.take();
}

Neighbor KdTree::nearest(const Vec3& query) const {
  auto r = knn(query, 1);
  if (r.empty()) fail(ErrorCode::kTooFewPoints, "nearest neighbor query on an empty tree");
  return r.front();
}

std::vector<std::vector<Neighbor>> knn_all(std::span<const Vec3> points, std::size_t k) {
  KdTree tree(points);
  std::vector<std::vector<Neighbor>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = tree.knn(points[i], k, static_cast<std::uint32_t>(i));
  }
  return out;
}

double mean_nearest_distance(std::span<const Vec3> points) {
  if (points.size() < 2) {
    fail(ErrorCode::kTooFewPoints, "need at least two points to estimate spacing");
  }
  const auto nn = knn_all(points, 1);
  double total = 0.0;
  for (const auto& n : nn) total += std::sqrt(n.front().dist2);
  return total / static_cast<double>(points.size());
}

}  // namespace selgraph
