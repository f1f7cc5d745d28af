// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/cli/app.hpp"

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selgraph/cli/commands.hpp"
#include "selgraph/cli/config.hpp"
#include "selgraph/error.hpp"
#include "selgraph/log.hpp"

namespace selgraph::cli {
namespace {

// Flag values land here and are merged over the config file as JSON, so both
// sources go through the same type and range checks.
struct Overrides {
  std::vector<std::function<void(nlohmann::json&)>> apply;

  template <typename T>
  void bind(CLI::App& app, const std::string& flag, const std::string& key, T& storage,
            const std::string& help) {
    CLI::Option* opt = app.add_option(flag, storage, help);
    apply.push_back([opt, key, &storage](nlohmann::json& j) {
      if (opt->count() > 0) j[key] = storage;
    });
  }
};

struct FlagValues {
  std::string domain, method, clustering, interp;
  std::string input, output, weights, network, mesh, texture, preview, csv;
  std::int64_t count = 0, width = 0, height = 0, subdivisions = 0, n_phi = 0, n = 0;
  std::int64_t k = 0, levels = 0, samples = 0, preview_width = 0;
  std::uint64_t seed = 0;
  double delta_theta = 0.0, fov = 0.0;
  std::vector<double> up;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selection-convolution graphs on spheres and meshes", "selgraph"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  bool timing = false;
  bool verbose = false;
  FlagValues v;
  Overrides ov;
  app.add_option("--config", config_path, "JSON config file; flags override its keys");
  ov.bind(app, "--domain", "domain", v.domain, "sphere or mesh");
  ov.bind(app, "--method", "method", v.method,
          "sampling: equirect, random, fibonacci, icosphere, layering");
  ov.bind(app, "--clustering", "clustering", v.clustering,
          "coarse-level sampling method (default: same as --method)");
  ov.bind(app, "--interp", "interp", v.interp, "angular or barycentric");
  ov.bind(app, "--count", "count", v.count, "points for random and fibonacci sampling");
  ov.bind(app, "--width", "width", v.width, "equirect sampling width");
  ov.bind(app, "--height", "height", v.height, "equirect sampling height");
  ov.bind(app, "--subdivisions", "subdivisions", v.subdivisions, "icosphere subdivisions");
  ov.bind(app, "--n-phi", "n_phi", v.n_phi, "layering row count");
  ov.bind(app, "--delta-theta", "delta_theta", v.delta_theta, "target spacing in radians");
  ov.bind(app, "--fov", "fov", v.fov, "training field of view in degrees (with --n)");
  ov.bind(app, "--n", "n", v.n, "training image size in pixels (with --fov)");
  ov.bind(app, "--k", "k", v.k, "neighbors per node");
  ov.bind(app, "--levels", "levels", v.levels, "pyramid levels");
  ov.bind(app, "--seed", "seed", v.seed, "random seed");
  ov.bind(app, "--samples", "samples", v.samples, "mesh surface samples");
  ov.bind(app, "--up", "up", v.up, "mesh up-vector (three numbers)");
  ov.bind(app, "--input", "input", v.input, "input equirect PNG");
  ov.bind(app, "--output", "output", v.output, "output file");
  ov.bind(app, "--weights", "weights", v.weights, "weight file");
  ov.bind(app, "--network", "network", v.network, "network JSON");
  ov.bind(app, "--mesh", "mesh", v.mesh, "OBJ mesh");
  ov.bind(app, "--texture", "texture", v.texture, "texture PNG");
  ov.bind(app, "--preview", "preview", v.preview, "preview PNG for sample");
  ov.bind(app, "--preview-width", "preview_width", v.preview_width, "preview width in pixels");
  ov.bind(app, "--csv", "csv", v.csv, "CSV output for ablate");
  app.add_flag("--timing", timing, "include build times in the ablation CSV");
  app.add_flag("-v,--verbose", verbose, "log progress to stderr");

  auto* sample_cmd = app.add_subcommand("sample", "generate a spherical point set");
  auto* build_cmd = app.add_subcommand("build", "build a graph pyramid and report statistics");
  auto* run_cmd = app.add_subcommand("run", "run a network on an equirect image or mesh texture");
  auto* ablate_cmd = app.add_subcommand("ablate", "sampling x clustering x interpolation grid");
  auto* info_cmd = app.add_subcommand("info", "describe a pyramid, point set, weight, PNG or OBJ file");
  std::string info_path;
  info_cmd->add_option("file", info_path, "file to describe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (verbose) log::set_level(log::Level::kInfo);

  try {
    nlohmann::json j = nlohmann::json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("cannot open config file '" + config_path + "'");
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      if (!j.is_object()) throw ValidationError("config must be a JSON object");
    }
    for (const auto& fn : ov.apply) fn(j);
    if (timing) j["timing"] = true;
    Config config = Config::from_json(j);
    config.validate();

    if (*sample_cmd) {
      cmd_sample(config, out);
    } else if (*build_cmd) {
      cmd_build(config, out);
    } else if (*run_cmd) {
      cmd_run(config, out);
    } else if (*ablate_cmd) {
      cmd_ablate(config, out);
    } else if (*info_cmd) {
      const std::string path = !info_path.empty() ? info_path : config.input;
      if (path.empty()) throw ValidationError("info needs a file argument");
      cmd_info(path, out);
    }
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace selgraph::cli
