// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "selgraph/cli/app.hpp"

int main(int argc, char** argv) {
  return selgraph::cli::run_cli(argc, argv, std::cout, std::cerr);
}
