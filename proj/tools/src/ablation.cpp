// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/cli/ablation.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "selgraph/conv.hpp"
#include "selgraph/error.hpp"
#include "selgraph/metrics.hpp"
#include "selgraph/sphere_graph.hpp"

namespace selgraph::cli {
namespace {

constexpr Eigen::Index kChannels = 3;
constexpr std::uint32_t kSeamWidth = 64;
constexpr std::uint32_t kSeamHeight = 32;

// Fixed inputs shared by all cells so cells differ only in graph structure.
struct Probe {
  std::array<Vec3, kChannels> gradients;  // linear field per channel
  PlanarKernel kernel;                    // cap-metric kernel
  PlanarKernel smoothing;                 // seam-metric kernel
  EquirectImage image;                    // seam-metric input
};

Probe make_probe(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Probe p;
  for (auto& g : p.gradients) g = Vec3(normal(rng), normal(rng), normal(rng));
  p.kernel = PlanarKernel(kChannels, kChannels);
  for (auto& v : p.kernel.values) v = normal(rng);

  p.smoothing = PlanarKernel(kChannels, kChannels);
  std::array<double, kChannels> sums{};
  for (std::size_t t = 0; t < p.smoothing.values.size(); ++t) {
    const double v = uniform(rng);
    p.smoothing.values[t] = v;
    sums[t % kChannels] += v;
  }
  for (std::size_t t = 0; t < p.smoothing.values.size(); ++t) {
    p.smoothing.values[t] /= sums[t % kChannels];
  }

  // Sum of plane waves in 3D: continuous across the azimuth seam and with
  // statistics that do not depend on longitude.
  struct Wave {
    Vec3 dir;
    double freq;
    double phase;
    std::array<double, kChannels> amp;
  };
  std::vector<Wave> waves(16);
  for (auto& w : waves) {
    w.dir = Vec3(normal(rng), normal(rng), normal(rng)).normalized();
    w.freq = 2.0 + 4.0 * uniform(rng);
    w.phase = kTwoPi * uniform(rng);
    for (auto& a : w.amp) a = 0.5 * (uniform(rng) - 0.5);
  }
  p.image = EquirectImage(kSeamWidth, kSeamHeight, kChannels);
  for (std::uint32_t r = 0; r < kSeamHeight; ++r) {
    const double phi = kPi * (r + 0.5) / kSeamHeight;
    for (std::uint32_t c = 0; c < kSeamWidth; ++c) {
      const Vec3 x = spherical_to_cartesian(kTwoPi * (c + 0.5) / kSeamWidth, phi);
      for (Eigen::Index ch = 0; ch < kChannels; ++ch) {
        double v = 0.5;
        for (const auto& w : waves) v += w.amp[ch] / 4.0 * std::sin(w.freq * w.dir.dot(x) + w.phase);
        p.image.at(r, c, static_cast<std::uint32_t>(ch)) = v;
      }
    }
  }
  return p;
}

// Graph convolution of a linear field on the coarse level versus the planar
// result over the tangent-plane stencil at that level's spacing.
double cap_deviation(const SpherePyramid& sp, const Probe& probe, const AblationOptions& opt) {
  const auto& fine = sp.pyramid.levels[0].nodes.positions;
  FeatureMatrix f(static_cast<Eigen::Index>(fine.size()), kChannels);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    for (Eigen::Index c = 0; c < kChannels; ++c) {
      f(static_cast<Eigen::Index>(i), c) = probe.gradients[c].dot(fine[i]);
    }
  }
  const FeatureMatrix pooled = pool(f, sp.pyramid.assignments[0], PoolMode::kMean);
  const GraphLevel& coarse = sp.pyramid.levels[1];
  const SelectionWeights taps = transfer_kernel(probe.kernel);
  const FeatureMatrix out = sel_conv(pooled, coarse.edges, taps);

  const Vec3 center = spherical_to_cartesian(opt.cap_theta, opt.cap_phi);
  double err2 = 0.0;
  double ref2 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
    const Vec3& x = coarse.nodes.positions[i];
    if (angular_distance(x, center) > opt.cap_radius) continue;
    const LocalFrame frame = local_frame(x);
    Eigen::RowVectorXd base(kChannels);
    Eigen::RowVectorXd dx(kChannels);
    Eigen::RowVectorXd dy(kChannels);
    for (Eigen::Index c = 0; c < kChannels; ++c) {
      base(c) = probe.gradients[c].dot(x);
      dx(c) = coarse.spacing * probe.gradients[c].dot(frame.x_hat);
      dy(c) = coarse.spacing * probe.gradients[c].dot(frame.y_hat);
    }
    Eigen::RowVectorXd expected = Eigen::RowVectorXd::Zero(kChannels);
    Eigen::RowVectorXd derivative = Eigen::RowVectorXd::Zero(kChannels);
    for (std::size_t m = 0; m < kSelectionCount; ++m) {
      const auto step = selection_step(static_cast<Selection>(m));
      const Eigen::RowVectorXd delta = step[0] * dx + step[1] * dy;
      expected += (base + delta) * taps[m];
      derivative += delta * taps[m];
    }
    err2 += (out.row(static_cast<Eigen::Index>(i)) - expected).squaredNorm();
    ref2 += derivative.squaredNorm();
    ++n;
  }
  if (n == 0 || !(ref2 > 0.0)) fail(ErrorCode::kTooFewPoints, "no coarse nodes inside the cap");
  return std::sqrt(err2 / ref2);
}

double seam_score(const SpherePyramid& sp, const Probe& probe) {
  const auto& level = sp.pyramid.levels[0];
  const FeatureMatrix in = image_to_features(probe.image, level.nodes.positions);
  const FeatureMatrix out = sel_conv(in, level.edges, transfer_kernel(probe.smoothing));
  const EquirectImage img =
      features_to_image(out, level.nodes.positions, kSeamWidth, kSeamHeight);
  return seam_discontinuity_score(img);
}

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace

AblationCell run_ablation_cell(SamplingMethod sampling, SamplingMethod clustering,
                               InterpolationScheme scheme, const AblationOptions& options) {
  AblationCell cell;
  cell.sampling = sampling;
  cell.clustering = clustering;
  cell.scheme = scheme;
  try {
    const Probe probe = make_probe(options.seed);
    const SamplingParams params =
        resolution_for({options.delta_theta}, sampling, options.seed).params;
    const SphericalPointSet points = sample(params);

    SphereGraphOptions gopt;
    gopt.k = options.k;
    gopt.scheme = scheme;
    gopt.levels = 2;
    gopt.clustering = clustering;
    const auto t0 = std::chrono::steady_clock::now();
    const SpherePyramid sp = build_sphere_pyramid(points, gopt);
    const auto t1 = std::chrono::steady_clock::now();
    cell.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    cell.fine_nodes = sp.pyramid.levels[0].nodes.size();
    cell.coarse_nodes = sp.pyramid.levels[1].nodes.size();
    std::size_t padding = 0;
    std::size_t total = 0;
    for (const auto& level : sp.pyramid.levels) {
      padding += level.edges.padding_size();
      total += level.edges.size();
    }
    cell.padding_fraction = total > 0 ? static_cast<double>(padding) / total : 0.0;
    cell.cap_deviation = cap_deviation(sp, probe, options);
    cell.seam_score = seam_score(sp, probe);
    cell.ok = true;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return cell;
}

std::vector<AblationCell> run_ablation(const AblationOptions& options) {
  std::vector<AblationCell> cells;
  for (auto s : kAblationSamplings) {
    for (auto c : kAblationClusterings) {
      for (auto scheme : {InterpolationScheme::kAngular, InterpolationScheme::kBarycentric}) {
        cells.push_back(run_ablation_cell(s, c, scheme, options));
      }
    }
  }
  return cells;
}

std::string ablation_csv(const std::vector<AblationCell>& cells, bool with_timing) {
  std::ostringstream out;
  out << "sampling,clustering,interp,status,fine_nodes,coarse_nodes,cap_deviation,seam_score,"
         "padding_fraction";
  if (with_timing) out << ",build_ms";
  out << '\n';
  for (const auto& c : cells) {
    out << to_string(c.sampling) << ',' << to_string(c.clustering) << ',' << to_string(c.scheme)
        << ',' << (c.ok ? "ok" : "failed") << ',';
    if (c.ok) {
      out << c.fine_nodes << ',' << c.coarse_nodes << ',' << format_double(c.cap_deviation, 6)
          << ',' << format_double(c.seam_score, 6) << ',' << format_double(c.padding_fraction, 6);
    } else {
      out << ",,,,";
    }
    if (with_timing) out << ',' << format_double(c.build_ms, 1);
    out << '\n';
  }
  return out.str();
}

std::string ablation_table(const std::vector<AblationCell>& cells) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-10s %-12s %7s %7s %10s %8s %8s %9s\n", "sampling",
                "clustering", "interp", "fine", "coarse", "cap_dev", "seam", "padding", "build_ms");
  out << line;
  for (const auto& c : cells) {
    if (c.ok) {
      std::snprintf(line, sizeof(line), "%-10s %-10s %-12s %7zu %7zu %10.4f %8.3f %8.4f %9.1f\n",
                    std::string(to_string(c.sampling)).c_str(),
                    std::string(to_string(c.clustering)).c_str(),
                    std::string(to_string(c.scheme)).c_str(), c.fine_nodes, c.coarse_nodes,
                    c.cap_deviation, c.seam_score, c.padding_fraction, c.build_ms);
      out << line;
    } else {
      std::snprintf(line, sizeof(line), "%-10s %-10s %-12s FAILED %s\n",
                    std::string(to_string(c.sampling)).c_str(),
                    std::string(to_string(c.clustering)).c_str(),
                    std::string(to_string(c.scheme)).c_str(), c.error.c_str());
      out << line;
    }
  }
  return out.str();
}

}  // namespace selgraph::cli
