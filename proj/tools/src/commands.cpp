// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "selgraph/cli/ablation.hpp"
#include "selgraph/container.hpp"
#include "selgraph/conv.hpp"
#include "selgraph/error.hpp"
#include "selgraph/mesh.hpp"
#include "selgraph/mesh_graph.hpp"
#include "selgraph/pyramid_io.hpp"
#include "selgraph/sphere_graph.hpp"
#include "selgraph/weights.hpp"

namespace selgraph::cli {
namespace {

void require(const std::string& value, const char* key, const char* command) {
  if (value.empty()) {
    throw ValidationError(std::string(command) + " needs '" + key + "' (config key or --" + key +
                          ")");
  }
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void report_pyramid(const GraphPyramid& p, std::ostream& out) {
  out << "domain " << p.domain << ", " << p.levels.size() << " level(s)\n";
  for (std::size_t l = 0; l < p.levels.size(); ++l) {
    const auto& level = p.levels[l];
    out << "  level " << l << ": nodes " << level.nodes.size() << ", edges " << level.edges.size()
        << ", padding " << level.edges.padding_size() << ", spacing " << fixed(level.spacing, 6);
    if (l < p.assignments.size()) {
      out << ", empty clusters " << p.assignments[l].empty_clusters();
    }
    out << '\n';
  }
}

NetworkSpec load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open network file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kFormatError, "network file '" + path + "' is not valid JSON: " + e.what());
  }
  return NetworkSpec::from_json(j);
}

std::size_t required_levels(const NetworkSpec& spec) {
  std::size_t level = 0;
  std::size_t deepest = 0;
  for (const auto& layer : spec.layers) {
    if (layer.type == LayerType::kPool) deepest = std::max(deepest, ++level);
    if (layer.type == LayerType::kUnpool && level > 0) --level;
  }
  return deepest + 1;
}

SphereGraphOptions sphere_options(const Config& c, std::size_t levels) {
  SphereGraphOptions o;
  o.k = static_cast<std::size_t>(c.k);
  o.scheme = c.scheme();
  o.levels = levels;
  o.clustering = c.clustering_method();
  return o;
}

MeshGraphOptions mesh_options(const Config& c, std::size_t levels) {
  MeshGraphOptions o;
  o.k = static_cast<std::size_t>(c.k);
  o.scheme = c.scheme();
  o.levels = levels;
  o.up = c.up;
  o.seed = c.seed;
  return o;
}

}  // namespace

Image render_point_preview(const SphericalPointSet& points, std::uint32_t width) {
  const std::uint32_t height = std::max<std::uint32_t>(1, width / 2);
  Image img(width, height, 1, 0.0);
  for (const auto& p : points.points) {
    const auto sc = cartesian_to_spherical(p);
    const auto col = std::min<std::uint32_t>(
        width - 1, static_cast<std::uint32_t>(std::floor(sc.theta / kTwoPi * width)));
    const auto row = std::min<std::uint32_t>(
        height - 1, static_cast<std::uint32_t>(std::floor(sc.phi / kPi * height)));
    img.at(row, col, 0) = 1.0;
  }
  return img;
}

void cmd_sample(const Config& c, std::ostream& out) {
  const SamplingParams params = c.sampling_params();
  const SphericalPointSet points = sample(params);
  out << "sampled " << points.size() << " points with method " << to_string(params.method)
      << '\n';
  if (!c.output.empty()) {
    write_file_bytes(c.output, encode_point_set(points));
    out << "wrote " << c.output << '\n';
  }
  if (!c.preview.empty()) {
    write_png(c.preview, render_point_preview(points, c.preview_width));
    out << "wrote " << c.preview << '\n';
  }
}

void cmd_build(const Config& c, std::ostream& out) {
  const auto levels = static_cast<std::size_t>(c.levels);
  GraphPyramid pyramid;
  if (c.domain == Domain::kSphere) {
    const SamplingParams params = c.sampling_params();
    pyramid = build_sphere_pyramid(sample(params), sphere_options(c, levels)).pyramid;
  } else {
    require(c.mesh, "mesh", "build");
    const MeshSurface mesh = read_obj(c.mesh);
    const auto samples = sample_surface(mesh, c.samples, c.seed);
    pyramid = build_mesh_pyramid(mesh, samples, mesh_options(c, levels)).pyramid;
  }
  report_pyramid(pyramid, out);
  if (!c.output.empty()) {
    write_pyramid(c.output, pyramid);
    out << "wrote " << c.output << '\n';
  }
}

void cmd_run(const Config& c, std::ostream& out) {
  require(c.weights, "weights", "run");
  require(c.network, "network", "run");
  require(c.output, "output", "run");
  if (c.domain == Domain::kSphere) {
    require(c.input, "input", "run");
  } else {
    require(c.mesh, "mesh", "run");
    require(c.texture, "texture", "run");
  }

  const NetworkSpec spec = load_network(c.network);
  const WeightStore weights = load_weights(c.weights);
  const std::size_t levels = std::max(static_cast<std::size_t>(c.levels), required_levels(spec));

  if (c.domain == Domain::kSphere) {
    const EquirectImage image = read_png(c.input);
    // Resolution from the config when given, else the image's own row spacing.
    const SamplingParams params = c.sampling_params(kPi / image.height);
    const SpherePyramid sp = build_sphere_pyramid(sample(params), sphere_options(c, levels));
    const auto& positions = sp.pyramid.levels[0].nodes.positions;
    check_network(spec, weights, sp.pyramid, image.channels);
    const FeatureMatrix result =
        run_network(spec, weights, sp.pyramid, image_to_features(image, positions));
    write_png(c.output, features_to_image(result, positions, image.width, image.height));
    out << "ran " << spec.layers.size() << " layer(s) on " << positions.size()
        << " sphere nodes\n";
  } else {
    const MeshSurface mesh = read_obj(c.mesh);
    const Image texture = read_png(c.texture);
    const auto samples = sample_surface(mesh, c.samples, c.seed);
    const MeshPyramid mp = build_mesh_pyramid(mesh, samples, mesh_options(c, levels));
    check_network(spec, weights, mp.pyramid, texture.channels);
    const FeatureMatrix result =
        run_network(spec, weights, mp.pyramid, texture_to_features(texture, mesh, samples));
    write_png(c.output, features_to_texture(result, samples, mesh, texture));
    out << "ran " << spec.layers.size() << " layer(s) on " << samples.size()
        << " surface samples\n";
  }
  out << "wrote " << c.output << '\n';
}

void cmd_ablate(const Config& c, std::ostream& out) {
  AblationOptions opt;
  if (c.target_spacing() > 0.0) opt.delta_theta = c.target_spacing();
  opt.seed = c.seed;
  opt.k = static_cast<std::size_t>(c.k);
  const auto cells = run_ablation(opt);
  out << ablation_table(cells);
  const std::string csv_path = !c.csv.empty() ? c.csv : c.output;
  if (!csv_path.empty()) {
    const std::string csv = ablation_csv(cells, c.timing);
    write_file_bytes(csv_path, {reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()});
    out << "wrote " << csv_path << '\n';
  }
  const auto failed = std::count_if(cells.begin(), cells.end(), [](const auto& x) { return !x.ok; });
  if (failed > 0) out << failed << " cell(s) failed\n";
}

void cmd_info(const std::string& path, std::ostream& out) {
  const auto bytes = read_file_bytes(path);
  const std::string head(bytes.begin(), bytes.begin() + std::min<std::size_t>(8, bytes.size()));
  if (head == kPyramidMagic) {
    const Container container = decode_container(kPyramidMagic, bytes);
    if (container.manifest.value("domain", "") == "points") {
      const SphericalPointSet points = decode_point_set(bytes);
      out << "point set: " << points.size() << " points, method "
          << to_string(points.params.method) << '\n';
    } else {
      out << "pyramid: ";
      report_pyramid(decode_pyramid(bytes), out);
    }
  } else if (head == kWeightMagic) {
    const WeightStore store = decode_weights(bytes);
    out << "weights: " << store.layers.size() << " layer(s)\n";
    for (const auto& [name, layer] : store.layers) {
      out << "  " << name << ": " << (layer.kind == LayerKind::kConv3x3 ? "conv3x3" : "conv1x1")
          << ' ' << layer.in_channels() << " -> " << layer.out_channels()
          << (layer.bias.size() > 0 ? ", bias" : "") << '\n';
    }
  } else if (head == "\x89PNG\r\n\x1a\n") {
    const Image img = read_png(path);
    out << "png: " << img.width << " x " << img.height << ", " << img.channels << " channel(s)\n";
  } else if (path.size() > 4 && path.substr(path.size() - 4) == ".obj") {
    const MeshSurface mesh = read_obj(path);
    out << "obj: " << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces, "
        << (mesh.has_uvs() ? "with" : "without") << " uvs, area " << fixed(mesh.total_area(), 6)
        << '\n';
  } else {
    fail(ErrorCode::kFormatError, "unrecognized file type: " + path);
  }
}

}  // namespace selgraph::cli
