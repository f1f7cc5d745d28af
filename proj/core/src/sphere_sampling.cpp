// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/sphere_sampling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>

#include "selgraph/error.hpp"
#include "selgraph/knn.hpp"

namespace selgraph {
namespace {

std::uint32_t round_count(double x) {
  return static_cast<std::uint32_t>(std::max(0.0, std::round(x)));
}

std::uint64_t icosphere_vertex_count(std::uint32_t s) {
  return 10ull * (1ull << (2 * s)) + 2ull;
}

}  // namespace

std::string_view to_string(SamplingMethod method) {
  switch (method) {
    case SamplingMethod::kEquirect: return "equirect";
    case SamplingMethod::kRandom: return "random";
    case SamplingMethod::kFibonacci: return "fibonacci";
    case SamplingMethod::kIcosphere: return "icosphere";
    case SamplingMethod::kLayering: return "layering";
  }
  return "unknown";
}

SamplingMethod parse_sampling_method(std::string_view name) {
  if (name == "equirect" || name == "equirectangular") return SamplingMethod::kEquirect;
  if (name == "random") return SamplingMethod::kRandom;
  if (name == "fibonacci" || name == "spiral") return SamplingMethod::kFibonacci;
  if (name == "icosphere") return SamplingMethod::kIcosphere;
  if (name == "layering") return SamplingMethod::kLayering;
  fail(ErrorCode::kInvalidArgument, "unknown sampling method '" + std::string(name) + "'");
}

std::vector<std::uint32_t> layering_row_counts(std::uint32_t n_phi) {
  if (n_phi < 1) fail(ErrorCode::kInvalidArgument, "layering needs n_phi >= 1");
  const double area = kPi * kPi / (static_cast<double>(n_phi) * n_phi);
  const double d = std::sqrt(area);
  const std::uint32_t rows = std::max<std::uint32_t>(1, round_count(kPi / d));
  const double d_phi = kPi / rows;
  const double d_theta = area / d_phi;
  std::vector<std::uint32_t> counts(rows);
  for (std::uint32_t m = 0; m < rows; ++m) {
    const double phi = kPi * (m + 0.5) / rows;
    // sin(phi) / d_theta, not sin(phi / d_theta): the row circumference over
    // the target azimuthal spacing.
    counts[m] = std::max<std::uint32_t>(1, round_count(kTwoPi * std::sin(phi) / d_theta));
  }
  return counts;
}

SphericalPointSet sample_layering(std::uint32_t n_phi) {
  const auto counts = layering_row_counts(n_phi);
  SphericalPointSet out;
  out.params.method = SamplingMethod::kLayering;
  out.params.n_phi = n_phi;
  const auto rows = static_cast<std::uint32_t>(counts.size());
  for (std::uint32_t m = 0; m < rows; ++m) {
    const double phi = kPi * (m + 0.5) / rows;
    for (std::uint32_t n = 0; n < counts[m]; ++n) {
      const double theta = kTwoPi * n / counts[m];
      out.points.push_back(spherical_to_cartesian(theta, phi));
    }
  }
  return out;
}

SphericalPointSet sample_fibonacci(std::uint32_t count) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "fibonacci sampling needs count >= 1");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  SphericalPointSet out;
  out.params.method = SamplingMethod::kFibonacci;
  out.params.count = count;
  out.points.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    const double h = 1.0 - 2.0 * (k + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - h * h));
    const double az = std::fmod(golden_angle * k, kTwoPi);
    out.points.emplace_back(r * std::sin(az), h, r * std::cos(az));
  }
  return out;
}

IcosphereMesh build_icosphere(std::uint32_t subdivisions) {
  if (subdivisions > kMaxIcosphereSubdivisions) {
    fail(ErrorCode::kLimitExceeded, "icosphere subdivisions " + std::to_string(subdivisions) +
                                        " exceed the limit of " +
                                        std::to_string(kMaxIcosphereSubdivisions));
  }
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  IcosphereMesh mesh;
  mesh.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                   {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : mesh.vertices) v.normalize();
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (std::uint32_t s = 0; s < subdivisions; ++s) {
    std::unordered_map<std::uint64_t, std::uint32_t> midpoints;
    midpoints.reserve(mesh.faces.size() * 2);
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const auto id = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<std::array<std::uint32_t, 3>> faces;
    faces.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const auto ab = midpoint(f[0], f[1]);
      const auto bc = midpoint(f[1], f[2]);
      const auto ca = midpoint(f[2], f[0]);
      faces.push_back({f[0], ab, ca});
      faces.push_back({f[1], bc, ab});
      faces.push_back({f[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(faces);
  }
  return mesh;
}

SphericalPointSet sample_icosphere(std::uint32_t subdivisions) {
  SphericalPointSet out;
  out.points = build_icosphere(subdivisions).vertices;
  out.params.method = SamplingMethod::kIcosphere;
  out.params.subdivisions = subdivisions;
  return out;
}

SphericalPointSet sample_equirect(std::uint32_t width, std::uint32_t height) {
  if (width < 1 || height < 1) {
    fail(ErrorCode::kInvalidArgument, "equirect sampling needs width, height >= 1");
  }
  SphericalPointSet out;
  out.params.method = SamplingMethod::kEquirect;
  out.params.width = width;
  out.params.height = height;
  out.points.reserve(static_cast<std::size_t>(width) * height);
  for (std::uint32_t r = 0; r < height; ++r) {
    const double phi = kPi * (r + 0.5) / height;
    for (std::uint32_t c = 0; c < width; ++c) {
      out.points.push_back(spherical_to_cartesian(kTwoPi * (c + 0.5) / width, phi));
    }
  }
  return out;
}

SphericalPointSet sample_random(std::uint32_t count, std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "random sampling needs count >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SphericalPointSet out;
  out.params.method = SamplingMethod::kRandom;
  out.params.count = count;
  out.params.seed = seed;
  out.points.reserve(count);
  while (out.points.size() < count) {
    Vec3 v(gauss(rng), gauss(rng), gauss(rng));
    const double n = v.norm();
    if (n < 1e-12) continue;
    out.points.push_back(v / n);
  }
  return out;
}

SphericalPointSet sample(const SamplingParams& p) {
  switch (p.method) {
    case SamplingMethod::kEquirect: return sample_equirect(p.width, p.height);
    case SamplingMethod::kRandom: return sample_random(p.count, p.seed);
    case SamplingMethod::kFibonacci: return sample_fibonacci(p.count);
    case SamplingMethod::kIcosphere: return sample_icosphere(p.subdivisions);
    case SamplingMethod::kLayering: return sample_layering(p.n_phi);
  }
  fail(ErrorCode::kInvalidArgument, "unknown sampling method");
}

SamplingParams coarser_params(const SamplingParams& p) {
  SamplingParams c = p;
  auto too_coarse = [&] {
    fail(ErrorCode::kTooCoarse,
         "cannot resample " + std::string(to_string(p.method)) + " any coarser");
  };
  switch (p.method) {
    case SamplingMethod::kEquirect:
      c.width = p.width / 2;
      c.height = p.height / 2;
      if (c.width == 0 || c.height == 0) too_coarse();
      break;
    case SamplingMethod::kRandom:
      c.count = p.count / 4;
      c.seed = p.seed + 1;
      if (c.count == 0) too_coarse();
      break;
    case SamplingMethod::kFibonacci:
      c.count = p.count / 4;
      if (c.count == 0) too_coarse();
      break;
    case SamplingMethod::kIcosphere:
      if (p.subdivisions == 0) too_coarse();
      c.subdivisions = p.subdivisions - 1;
      break;
    case SamplingMethod::kLayering:
      c.n_phi = p.n_phi / 2;
      if (c.n_phi == 0) too_coarse();
      break;
  }
  return c;
}

SamplingParams params_for_count(SamplingMethod method, std::uint32_t count, std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::kTooCoarse, "target point count is zero");
  SamplingParams p;
  p.method = method;
  p.seed = seed;
  switch (method) {
    case SamplingMethod::kEquirect:
      p.height = std::max<std::uint32_t>(1, round_count(std::sqrt(count / 2.0)));
      p.width = 2 * p.height;
      break;
    case SamplingMethod::kRandom:
    case SamplingMethod::kFibonacci:
      p.count = count;
      break;
    case SamplingMethod::kIcosphere: {
      std::uint32_t best = 0;
      for (std::uint32_t s = 1; s <= kMaxIcosphereSubdivisions; ++s) {
        const auto err = [&](std::uint32_t k) {
          return std::abs(static_cast<double>(icosphere_vertex_count(k)) - count);
        };
        if (err(s) < err(best)) best = s;
      }
      p.subdivisions = best;
      break;
    }
    case SamplingMethod::kLayering: {
      const auto guess = std::max<std::int64_t>(1, std::llround(std::sqrt(kPi * count / 4.0)));
      double best_err = std::numeric_limits<double>::infinity();
      for (std::int64_t n = std::max<std::int64_t>(1, guess - 3); n <= guess + 3; ++n) {
        std::uint64_t total = 0;
        for (auto c : layering_row_counts(static_cast<std::uint32_t>(n))) total += c;
        const double err = std::abs(static_cast<double>(total) - count);
        if (err < best_err) {
          best_err = err;
          p.n_phi = static_cast<std::uint32_t>(n);
        }
      }
      break;
    }
  }
  return p;
}

ClusterAssignment nearest_assignment(std::span<const Vec3> fine, std::span<const Vec3> coarse) {
  if (coarse.empty()) fail(ErrorCode::kTooCoarse, "coarse point set is empty");
  KdTree tree(coarse);
  ClusterAssignment a;
  a.coarse_count = static_cast<std::uint32_t>(coarse.size());
  a.parent.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) a.parent[i] = tree.nearest(fine[i]).index;
  return a;
}

std::pair<SphericalPointSet, ClusterAssignment> cluster_resample(
    const SphericalPointSet& fine, std::uint32_t ratio, std::optional<SamplingMethod> clustering) {
  if (ratio != 4) {
    fail(ErrorCode::kInvalidArgument, "cluster ratio must be 4 (stride 2 in each dimension)");
  }
  SamplingParams coarse_params;
  if (!clustering || *clustering == fine.params.method) {
    coarse_params = coarser_params(fine.params);
  } else {
    const auto target = static_cast<std::uint32_t>(fine.size() / ratio);
    if (target == 0) fail(ErrorCode::kTooCoarse, "fine set too small to cluster");
    coarse_params = params_for_count(*clustering, target, fine.params.seed + 1);
  }
  SphericalPointSet coarse = sample(coarse_params);
  if (coarse.size() == 0 || coarse.size() >= fine.size()) {
    fail(ErrorCode::kTooCoarse, "resampled set with " + std::to_string(coarse.size()) +
                                    " points does not coarsen " + std::to_string(fine.size()));
  }
  ClusterAssignment assignment = nearest_assignment(fine.points, coarse.points);
  return {std::move(coarse), std::move(assignment)};
}

ResolutionSpec ResolutionSpec::from_fov(double fov, std::uint32_t n) {
  if (!(fov > 0.0 && fov < kPi) || n < 1) {
    fail(ErrorCode::kInvalidArgument, "resolution needs 0 < fov < pi and n >= 1");
  }
  return {fov / n};
}

double icosphere_edge_length(std::uint32_t subdivisions) {
  static std::mutex mutex;
  static std::map<std::uint32_t, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(subdivisions); it != cache.end()) return it->second;
  const auto mesh = build_icosphere(subdivisions);
  double total = 0.0;
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      total += angular_distance(mesh.vertices[f[e]], mesh.vertices[f[(e + 1) % 3]]);
    }
  }
  const double mean = total / (3.0 * mesh.faces.size());
  cache.emplace(subdivisions, mean);
  return mean;
}

ResolutionMatch resolution_for(const ResolutionSpec& spec, SamplingMethod method,
                               std::uint64_t seed) {
  const double dt = spec.delta_theta;
  if (!(dt > 0.0)) fail(ErrorCode::kInvalidArgument, "delta_theta must be positive");
  ResolutionMatch m;
  m.params.method = method;
  m.params.seed = seed;
  switch (method) {
    case SamplingMethod::kLayering:
      m.params.n_phi = std::max<std::uint32_t>(1, round_count(kPi / dt));
      m.achieved_spacing = kPi / m.params.n_phi;
      break;
    case SamplingMethod::kFibonacci:
    case SamplingMethod::kRandom:
      m.params.count = std::max<std::uint32_t>(1, round_count(4.0 * kPi / (dt * dt)));
      m.achieved_spacing = std::sqrt(4.0 * kPi / m.params.count);
      break;
    case SamplingMethod::kEquirect:
      m.params.height = std::max<std::uint32_t>(1, round_count(kPi / dt));
      m.params.width = 2 * m.params.height;
      m.achieved_spacing = kPi / m.params.height;
      break;
    case SamplingMethod::kIcosphere: {
      std::uint32_t s = 0;
      while (s < kMaxIcosphereSubdivisions && icosphere_edge_length(s) > dt) ++s;
      m.params.subdivisions = s;
      m.achieved_spacing = icosphere_edge_length(s);
      break;
    }
  }
  return m;
}

}  // namespace selgraph
