// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Subcommand bodies. Each throws ValidationError for unusable configuration
// (checked before any file is touched) and selgraph::Error for runtime
// failures.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "selgraph/cli/config.hpp"
#include "selgraph/image.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace selgraph::cli {

void cmd_sample(const Config& config, std::ostream& out);
void cmd_build(const Config& config, std::ostream& out);
void cmd_run(const Config& config, std::ostream& out);
void cmd_ablate(const Config& config, std::ostream& out);
void cmd_info(const std::string& path, std::ostream& out);

/// Equirectangular raster with a white pixel at every point.
Image render_point_preview(const SphericalPointSet& points, std::uint32_t width);

}  // namespace selgraph::cli
