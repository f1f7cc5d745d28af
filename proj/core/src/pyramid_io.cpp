// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/pyramid_io.hpp"

#include <map>
#include <string>

#include "selgraph/container.hpp"
#include "selgraph/error.hpp"

namespace selgraph {
namespace {

using nlohmann::json;

constexpr int kPyramidVersion = 1;

class ArrayWriter {
 public:
  template <typename T>
  void add(const std::string& name, const char* dtype, std::vector<std::uint64_t> shape,
           std::span<const T> values) {
    const auto offset = blob_.append_array(values);
    arrays_.push_back({{"name", name},
                       {"dtype", dtype},
                       {"shape", shape},
                       {"offset", offset},
                       {"length", values.size_bytes()}});
  }

  json arrays() const { return arrays_; }
  std::vector<std::uint8_t> release() { return blob_.release(); }

 private:
  BlobWriter blob_;
  json arrays_ = json::array();
};

std::vector<double> flatten(const std::vector<Vec3>& v) {
  std::vector<double> out;
  out.reserve(v.size() * 3);
  for (const auto& p : v) out.insert(out.end(), {p.x(), p.y(), p.z()});
  return out;
}

std::vector<double> flatten(const std::vector<Vec2>& v) {
  std::vector<double> out;
  out.reserve(v.size() * 2);
  for (const auto& p : v) out.insert(out.end(), {p.x(), p.y()});
  return out;
}

class ArrayReader {
 public:
  explicit ArrayReader(const Container& c) : c_(c) {
    if (!c.manifest.contains("arrays") || !c.manifest["arrays"].is_array()) {
      fail(ErrorCode::kFormatError, "manifest lacks an 'arrays' list");
    }
    for (const auto& a : c.manifest["arrays"]) entries_[a.at("name").get<std::string>()] = a;
  }

  bool has(const std::string& name) const { return entries_.count(name) > 0; }

  template <typename T>
  std::vector<T> get(const std::string& name, const char* dtype) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) fail(ErrorCode::kFormatError, "missing array '" + name + "'");
    const json& a = it->second;
    if (a.at("dtype").get<std::string>() != dtype) {
      fail(ErrorCode::kFormatError, "array '" + name + "' has unexpected dtype");
    }
    return read_blob_array<T>(c_, a.at("offset").get<std::uint64_t>(),
                              a.at("length").get<std::uint64_t>());
  }

 private:
  const Container& c_;
  std::map<std::string, json> entries_;
};

std::vector<Vec3> unflatten3(const std::vector<double>& v) {
  if (v.size() % 3 != 0) fail(ErrorCode::kFormatError, "3-vector array length not divisible by 3");
  std::vector<Vec3> out(v.size() / 3);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {v[3 * i], v[3 * i + 1], v[3 * i + 2]};
  return out;
}

std::vector<Vec2> unflatten2(const std::vector<double>& v) {
  if (v.size() % 2 != 0) fail(ErrorCode::kFormatError, "2-vector array length not divisible by 2");
  std::vector<Vec2> out(v.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {v[2 * i], v[2 * i + 1]};
  return out;
}

json sampling_json(const SamplingParams& p) {
  return {{"method", std::string(to_string(p.method))},
          {"count", p.count},
          {"width", p.width},
          {"height", p.height},
          {"subdivisions", p.subdivisions},
          {"n_phi", p.n_phi},
          {"seed", p.seed}};
}

SamplingParams sampling_from_json(const json& j) {
  SamplingParams p;
  p.method = parse_sampling_method(j.at("method").get<std::string>());
  p.count = j.at("count").get<std::uint32_t>();
  p.width = j.at("width").get<std::uint32_t>();
  p.height = j.at("height").get<std::uint32_t>();
  p.subdivisions = j.at("subdivisions").get<std::uint32_t>();
  p.n_phi = j.at("n_phi").get<std::uint32_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

Container pyramid_container(const GraphPyramid& pyramid) {
  ArrayWriter arrays;
  json levels = json::array();
  for (std::size_t l = 0; l < pyramid.levels.size(); ++l) {
    const auto& level = pyramid.levels[l];
    const auto& nodes = level.nodes;
    const auto& edges = level.edges;
    const std::string prefix = "level" + std::to_string(l) + ".";
    const std::uint64_t n = nodes.size();
    const std::uint64_t m = edges.size();

    const auto positions = flatten(nodes.positions);
    const auto normals = flatten(nodes.normals);
    arrays.add<double>(prefix + "positions", "f64", {n, 3}, positions);
    arrays.add<double>(prefix + "normals", "f64", {n, 3}, normals);
    if (!nodes.uvs.empty()) {
      const auto uvs = flatten(nodes.uvs);
      arrays.add<double>(prefix + "uvs", "f64", {n, 2}, uvs);
    }
    if (!nodes.source_pixels.empty()) {
      std::vector<std::uint32_t> px;
      px.reserve(2 * n);
      for (const auto& rc : nodes.source_pixels) px.insert(px.end(), {rc[0], rc[1]});
      arrays.add<std::uint32_t>(prefix + "source_pixels", "u32", {n, 2}, px);
    }
    arrays.add<std::uint32_t>(prefix + "src", "u32", {m}, edges.src);
    arrays.add<std::uint32_t>(prefix + "dst", "u32", {m}, edges.dst);
    arrays.add<std::uint8_t>(prefix + "selection", "u8", {m}, edges.selection);
    arrays.add<double>(prefix + "weight", "f64", {m}, edges.weight);

    json meta = {{"node_count", n}, {"edge_count", m}, {"spacing", level.spacing}};
    meta["padding_begin"] = edges.padding_begin ? json(*edges.padding_begin) : json(nullptr);
    levels.push_back(meta);
  }
  json coarse_counts = json::array();
  for (std::size_t l = 0; l < pyramid.assignments.size(); ++l) {
    const auto& a = pyramid.assignments[l];
    arrays.add<std::uint32_t>("assignment" + std::to_string(l) + ".parent", "u32",
                              {a.parent.size()}, a.parent);
    coarse_counts.push_back(a.coarse_count);
  }

  Container c;
  c.manifest = {{"format", "selgraph-pyramid"},
                {"version", kPyramidVersion},
                {"domain", pyramid.domain},
                {"selection_order", pyramid.selection_order},
                {"levels", levels},
                {"coarse_counts", coarse_counts}};
  c.manifest["arrays"] = arrays.arrays();
  c.blob = arrays.release();
  return c;
}

GraphPyramid pyramid_from_container(const Container& c) {
  const json& m = c.manifest;
  GraphPyramid pyramid;
  try {
    if (m.at("format").get<std::string>() != "selgraph-pyramid") {
      fail(ErrorCode::kFormatError, "not a pyramid manifest");
    }
    if (m.at("version").get<int>() != kPyramidVersion) {
      fail(ErrorCode::kFormatError, "unsupported pyramid version");
    }
    pyramid.domain = m.at("domain").get<std::string>();
    pyramid.selection_order = m.at("selection_order").get<std::string>();
    if (pyramid.selection_order != kSelectionOrderTag) {
      fail(ErrorCode::kFormatError, "unsupported selection order '" + pyramid.selection_order + "'");
    }
    ArrayReader arrays(c);
    const auto& levels = m.at("levels");
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const std::string prefix = "level" + std::to_string(l) + ".";
      GraphLevel level;
      level.spacing = levels[l].at("spacing").get<double>();
      level.nodes.positions = unflatten3(arrays.get<double>(prefix + "positions", "f64"));
      level.nodes.normals = unflatten3(arrays.get<double>(prefix + "normals", "f64"));
      if (arrays.has(prefix + "uvs")) {
        level.nodes.uvs = unflatten2(arrays.get<double>(prefix + "uvs", "f64"));
      }
      if (arrays.has(prefix + "source_pixels")) {
        const auto px = arrays.get<std::uint32_t>(prefix + "source_pixels", "u32");
        for (std::size_t i = 0; i + 1 < px.size(); i += 2) {
          level.nodes.source_pixels.push_back({px[i], px[i + 1]});
        }
      }
      level.edges.src = arrays.get<std::uint32_t>(prefix + "src", "u32");
      level.edges.dst = arrays.get<std::uint32_t>(prefix + "dst", "u32");
      level.edges.selection = arrays.get<std::uint8_t>(prefix + "selection", "u8");
      level.edges.weight = arrays.get<double>(prefix + "weight", "f64");
      const auto& pb = levels[l].at("padding_begin");
      if (!pb.is_null()) level.edges.padding_begin = pb.get<std::size_t>();
      pyramid.levels.push_back(std::move(level));
    }
    const auto& coarse_counts = m.at("coarse_counts");
    for (std::size_t l = 0; l < coarse_counts.size(); ++l) {
      ClusterAssignment a;
      a.parent = arrays.get<std::uint32_t>("assignment" + std::to_string(l) + ".parent", "u32");
      a.coarse_count = coarse_counts[l].get<std::uint32_t>();
      pyramid.assignments.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("malformed pyramid manifest: ") + e.what());
  }
  return pyramid;
}

}  // namespace

std::vector<std::uint8_t> encode_pyramid(const GraphPyramid& pyramid) {
  return encode_container(kPyramidMagic, pyramid_container(pyramid));
}

GraphPyramid decode_pyramid(std::span<const std::uint8_t> bytes) {
  GraphPyramid p = pyramid_from_container(decode_container(kPyramidMagic, bytes));
  if (p.domain != "points") p.validate();
  return p;
}

void write_pyramid(const std::filesystem::path& path, const GraphPyramid& pyramid) {
  write_file_bytes(path, encode_pyramid(pyramid));
}

GraphPyramid read_pyramid(const std::filesystem::path& path) {
  return decode_pyramid(read_file_bytes(path));
}

std::vector<std::uint8_t> encode_point_set(const SphericalPointSet& points) {
  GraphPyramid p;
  p.domain = "points";
  GraphLevel level;
  level.nodes.positions = points.points;
  level.nodes.normals = points.points;
  p.levels.push_back(std::move(level));
  Container c = pyramid_container(p);
  c.manifest["sampling"] = sampling_json(points.params);
  return encode_container(kPyramidMagic, c);
}

SphericalPointSet decode_point_set(std::span<const std::uint8_t> bytes) {
  const Container c = decode_container(kPyramidMagic, bytes);
  GraphPyramid p = pyramid_from_container(c);
  if (p.domain != "points" || p.levels.size() != 1 || !c.manifest.contains("sampling")) {
    fail(ErrorCode::kFormatError, "file does not hold a point set");
  }
  SphericalPointSet out;
  out.points = std::move(p.levels.front().nodes.positions);
  try {
    out.params = sampling_from_json(c.manifest["sampling"]);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("malformed sampling block: ") + e.what());
  }
  return out;
}

}  // namespace selgraph
