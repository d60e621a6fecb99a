// Copyright 2026 The soamnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Find Winners throughput: exhaustive scan, hash grid, and the tiled
// parallel batch scan, on networks taken from a torus run.
#include <benchmark/benchmark.h>

#include <map>

#include "soam/engine.hpp"
#include "soam/multi_signal.hpp"
#include "soam/parallel_executor.hpp"
#include "soam/sampling.hpp"
#include "soam/spatial_index.hpp"

namespace {

using namespace soam;

const TorusSource kTorus(2.0, 0.5);
constexpr double kTheta = 0.1;

// Grown once per size and cached across benchmarks.
const Network& network_of(std::size_t units) {
  static std::map<std::size_t, Network> cache;
  auto it = cache.find(units);
  if (it == cache.end()) {
    EngineParams p;
    p.theta0 = kTheta;
    RunControl c;
    c.stop_at_units = units;
    it = cache.emplace(units, run_single(kTorus, p, 1, std::nullopt, c).network).first;
  }
  return it->second;
}

std::vector<Vec3> signals(std::size_t n) { return sample_points(kTorus, n, 99); }

void BM_Exhaustive(benchmark::State& state) {
  const Network& net = network_of(state.range(0));
  const auto batch = signals(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_winners_exhaustive(net.view(), batch[i++ % batch.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_HashGrid(benchmark::State& state) {
  const Network& net = network_of(state.range(0));
  const Bounds bb = kTorus.bounds();
  HashGrid grid(bb.min, bb.max, kTheta);
  grid.index_all(net);
  const auto batch = signals(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid.query_winners(net.view(), batch[i++ % batch.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_BatchSequential(benchmark::State& state) {
  const Network& net = network_of(state.range(0));
  const Snapshot snap = net.snapshot();
  const auto batch = signals(batch_size(snap.size()));
  for (auto _ : state) benchmark::DoNotOptimize(batch_find_winners(snap, batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}

void BM_BatchParallel(benchmark::State& state) {
  const Network& net = network_of(state.range(0));
  const Snapshot snap = net.snapshot();
  const auto batch = signals(batch_size(snap.size()));
  const ParallelExecutor exec({static_cast<std::size_t>(state.range(1)), 1024});
  for (auto _ : state) benchmark::DoNotOptimize(exec.find(snap, batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}

BENCHMARK(BM_Exhaustive)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_HashGrid)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_BatchSequential)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_BatchParallel)->ArgsProduct({{256, 1024, 4096}, {1, 2, 4}})->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
