// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace selgraph::log {
namespace {

std::atomic<Level> g_level{Level::kWarning};
std::mutex g_mutex;

void emit(Level lvl, const char* tag, const std::string& message) {
  if (lvl < g_level.load()) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << "[selgraph " << tag << "] " << message << '\n';
}

}  // namespace

void set_level(Level lvl) { g_level.store(lvl); }
Level level() { return g_level.load(); }

void warning(const std::string& message) { emit(Level::kWarning, "warning", message); }
void info(const std::string& message) { emit(Level::kInfo, "info", message); }

}  // namespace selgraph::log
