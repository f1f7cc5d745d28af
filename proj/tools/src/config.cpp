// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/cli/config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "selgraph/error.hpp"

namespace selgraph::cli {
namespace {

const std::set<std::string> kKnownKeys = {
    "domain",  "method",  "clustering", "interp",  "count",    "width",        "height",
    "subdivisions", "n_phi", "delta_theta", "fov", "n",        "k",            "levels",
    "seed",    "samples", "up",         "input",   "output",   "weights",      "network",
    "mesh",    "texture", "preview",    "preview_width", "csv", "timing"};

std::int64_t get_int(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError("config key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint32_t get_count(const nlohmann::json& j, const std::string& key) {
  const std::int64_t v = get_int(j, key);
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("config key '" + key + "' is out of range");
  }
  return static_cast<std::uint32_t>(v);
}

double get_double(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::string get_string(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ValidationError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

template <typename Fn>
auto checked(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace

Config Config::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.count(key)) throw ValidationError("unknown config key '" + key + "'");
  }
  Config c;
  if (j.contains("domain")) {
    const std::string d = get_string(j, "domain");
    if (d == "sphere") {
      c.domain = Domain::kSphere;
    } else if (d == "mesh") {
      c.domain = Domain::kMesh;
    } else {
      throw ValidationError("domain must be 'sphere' or 'mesh', got '" + d + "'");
    }
  }
  if (j.contains("method")) c.method = get_string(j, "method");
  if (j.contains("clustering")) c.clustering = get_string(j, "clustering");
  if (j.contains("interp")) c.interp = get_string(j, "interp");
  if (j.contains("count")) c.count = get_count(j, "count");
  if (j.contains("width")) c.width = get_count(j, "width");
  if (j.contains("height")) c.height = get_count(j, "height");
  if (j.contains("subdivisions")) {
    c.subdivisions = get_count(j, "subdivisions");
    c.subdivisions_set = true;
  }
  if (j.contains("n_phi")) c.n_phi = get_count(j, "n_phi");
  if (j.contains("delta_theta")) c.delta_theta = get_double(j, "delta_theta");
  if (j.contains("fov")) c.fov_deg = get_double(j, "fov");
  if (j.contains("n")) c.fov_n = get_count(j, "n");
  if (j.contains("k")) c.k = get_int(j, "k");
  if (j.contains("levels")) c.levels = get_int(j, "levels");
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_unsigned()) throw ValidationError("config key 'seed' must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (j.contains("samples")) c.samples = get_count(j, "samples");
  if (j.contains("up")) {
    const auto& v = j.at("up");
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
      throw ValidationError("config key 'up' must be an array of three numbers");
    }
    c.up = Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }
  if (j.contains("input")) c.input = get_string(j, "input");
  if (j.contains("output")) c.output = get_string(j, "output");
  if (j.contains("weights")) c.weights = get_string(j, "weights");
  if (j.contains("network")) c.network = get_string(j, "network");
  if (j.contains("mesh")) c.mesh = get_string(j, "mesh");
  if (j.contains("texture")) c.texture = get_string(j, "texture");
  if (j.contains("preview")) c.preview = get_string(j, "preview");
  if (j.contains("preview_width")) c.preview_width = get_count(j, "preview_width");
  if (j.contains("csv")) c.csv = get_string(j, "csv");
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) throw ValidationError("config key 'timing' must be a boolean");
    c.timing = j.at("timing").get<bool>();
  }
  return c;
}

void Config::validate() const {
  sampling_method();
  clustering_method();
  scheme();
  if (k < 1) throw ValidationError("k must be at least 1");
  if (levels < 1) throw ValidationError("levels must be at least 1");
  if (delta_theta && !(*delta_theta > 0.0 && std::isfinite(*delta_theta))) {
    throw ValidationError("delta_theta must be positive");
  }
  if (fov_deg) {
    if (!(*fov_deg > 0.0 && *fov_deg < 180.0)) throw ValidationError("fov must be in (0, 180) degrees");
    if (fov_n < 1) throw ValidationError("fov needs n >= 1");
  }
  if ((width == 0) != (height == 0)) throw ValidationError("width and height must be given together");
  if (subdivisions_set && subdivisions > kMaxIcosphereSubdivisions) {
    throw ValidationError("subdivisions must be at most " +
                          std::to_string(kMaxIcosphereSubdivisions));
  }
  if (samples < 1) throw ValidationError("samples must be at least 1");
  if (preview_width < 2) throw ValidationError("preview_width must be at least 2");
  if (up && !(up->norm() > 0.0 && up->allFinite())) {
    throw ValidationError("up must be a finite nonzero vector");
  }
}

SamplingMethod Config::sampling_method() const {
  return checked([&] { return parse_sampling_method(method); });
}

std::optional<SamplingMethod> Config::clustering_method() const {
  if (clustering.empty() || clustering == "same") return std::nullopt;
  return checked([&] { return parse_sampling_method(clustering); });
}

InterpolationScheme Config::scheme() const {
  return checked([&] { return parse_interpolation_scheme(interp); });
}

bool Config::has_explicit_size() const {
  switch (sampling_method()) {
    case SamplingMethod::kEquirect: return width > 0;
    case SamplingMethod::kRandom:
    case SamplingMethod::kFibonacci: return count > 0;
    case SamplingMethod::kIcosphere: return subdivisions_set;
    case SamplingMethod::kLayering: return n_phi > 0;
  }
  return false;
}

double Config::target_spacing() const {
  if (delta_theta) return *delta_theta;
  if (fov_deg) return (*fov_deg * kPi / 180.0) / fov_n;
  return 0.0;
}

SamplingParams Config::sampling_params(double fallback_spacing) const {
  const SamplingMethod m = sampling_method();
  if (has_explicit_size()) {
    SamplingParams p;
    p.method = m;
    p.count = count;
    p.width = width;
    p.height = height;
    p.subdivisions = subdivisions;
    p.n_phi = n_phi;
    p.seed = seed;
    return p;
  }
  double spacing = target_spacing();
  if (!(spacing > 0.0)) spacing = fallback_spacing;
  if (!(spacing > 0.0)) {
    throw ValidationError("sampling resolution unspecified: give delta_theta, fov and n, or an "
                          "explicit size for method '" + method + "'");
  }
  return checked([&] { return resolution_for({spacing}, m, seed).params; });
}

}  // namespace selgraph::cli
