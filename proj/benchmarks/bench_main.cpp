// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "selgraph/conv.hpp"
#include "selgraph/knn.hpp"
#include "selgraph/sphere_graph.hpp"
#include "selgraph/sphere_sampling.hpp"

namespace {

using namespace selgraph;

void BM_KnnAll(benchmark::State& state) {
  const auto points = sample_fibonacci(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(knn_all(points.points, 8));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KnnAll)->Arg(1 << 12)->Arg(1 << 15)->Unit(benchmark::kMillisecond);

void BM_BuildSphereGraph(benchmark::State& state) {
  const auto points = sample_layering(static_cast<std::uint32_t>(state.range(0)));
  SphereGraphOptions opt;
  opt.scheme = state.range(1) ? InterpolationScheme::kBarycentric : InterpolationScheme::kAngular;
  for (auto _ : state) benchmark::DoNotOptimize(build_sphere_graph(points, opt));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_BuildSphereGraph)
    ->Args({32, 0})
    ->Args({128, 0})
    ->Args({128, 1})
    ->Unit(benchmark::kMillisecond);

void BM_SelConv(benchmark::State& state) {
  const auto points = sample_layering(128);
  const auto graph = build_sphere_graph(points, default_sphere_options());
  const CompiledEdges edges(graph.levels[0].edges, points.size());
  const auto channels = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  PlanarKernel k(channels, channels);
  for (auto& v : k.values) v = g(rng);
  const auto taps = transfer_kernel(k);
  FeatureMatrix x(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(channels));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sel_conv(x, edges, taps));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_SelConv)->Arg(3)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
