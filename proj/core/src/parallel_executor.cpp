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

#include "soam/parallel_executor.hpp"

#include <algorithm>
#include <chrono>

#include "soam/errors.hpp"

namespace soam {

std::size_t ExecConfig::default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void ExecConfig::validate() const {
  if (workers < 1) throw ArgumentError("ExecConfig: workers must be at least 1");
  if (tile < 1) throw ArgumentError("ExecConfig: tile must be at least 1");
}

WorkerPool::WorkerPool(std::size_t threads) {
  const std::size_t extra = threads > 1 ? threads - 1 : 0;
  threads_.reserve(extra);
  for (std::size_t lane = 1; lane <= extra; ++lane) {
    threads_.emplace_back([this, lane] { loop(lane); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::loop(std::size_t lane) {
  std::uint64_t seen = 0;
  while (true) {
    const std::function<void(std::size_t)>* job = nullptr;
    {
      std::unique_lock lock(mu_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      if (lane >= parts_) continue;
      job = job_;
    }
    (*job)(lane);
    {
      std::lock_guard lock(mu_);
      if (--pending_ == 0) done_.notify_one();
    }
  }
}

void WorkerPool::run(std::size_t parts, const std::function<void(std::size_t)>& job) {
  if (parts == 0) return;
  if (parts > size()) throw ArgumentError("WorkerPool::run: more parts than lanes");
  if (parts == 1) {
    job(0);
    return;
  }
  {
    std::lock_guard lock(mu_);
    job_ = &job;
    parts_ = parts;
    pending_ = parts - 1;
    ++generation_;
  }
  wake_.notify_all();
  job(0);
  std::unique_lock lock(mu_);
  done_.wait(lock, [&] { return pending_ == 0; });
  job_ = nullptr;
}

namespace {

void scan_chunk(const PositionView& units, std::span<const Vec3> signals,
                std::size_t tile, std::span<WinnerResult> out) {
  const std::size_t n = units.size();
  const Vec3* pos = units.positions.data();
  const UnitId* ids = units.ids.data();
  std::vector<BestTwo> best(signals.size());
  for (std::size_t t0 = 0; t0 < n; t0 += std::min(tile, n - t0)) {
    const std::size_t t1 = t0 + std::min(tile, n - t0);
    for (std::size_t j = 0; j < signals.size(); ++j) {
      BestTwo b = best[j];
      const Vec3 x = signals[j];
      for (std::size_t i = t0; i < t1; ++i) b.offer(squared_distance(pos[i], x), ids[i]);
      best[j] = b;
    }
  }
  for (std::size_t j = 0; j < signals.size(); ++j) out[j] = best[j].result();
}

}  // namespace

ParallelExecutor::ParallelExecutor(const ExecConfig& cfg)
    : cfg_((cfg.validate(), cfg)), pool_(cfg.workers) {}

std::vector<WinnerResult> ParallelExecutor::find(const PositionView& units,
                                                 std::span<const Vec3> batch) const {
  if (units.size() < 2) {
    throw StateError("parallel_batch_find_winners: need at least 2 units");
  }
  std::vector<WinnerResult> out(batch.size());
  if (batch.empty()) return out;
  const std::size_t lanes = std::min(cfg_.workers, batch.size());
  const std::size_t chunk = (batch.size() + lanes - 1) / lanes;
  const std::size_t parts = (batch.size() + chunk - 1) / chunk;
  pool_.run(parts, [&](std::size_t part) {
    const std::size_t b0 = part * chunk;
    const std::size_t len = std::min(chunk, batch.size() - b0);
    scan_chunk(units, batch.subspan(b0, len), cfg_.tile,
               std::span<WinnerResult>(out).subspan(b0, len));
  });
  return out;
}

ParallelExecutor::Timed ParallelExecutor::timed_find(const PositionView& units,
                                                     std::span<const Vec3> batch) const {
  const auto t0 = std::chrono::steady_clock::now();
  Timed r;
  r.results = find(units, batch);
  r.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

BatchFinder ParallelExecutor::finder() const {
  return [this](const PositionView& units, std::span<const Vec3> batch) {
    return find(units, batch);
  };
}

std::vector<WinnerResult> parallel_batch_find_winners(const PositionView& units,
                                                      std::span<const Vec3> batch,
                                                      const ExecConfig& cfg) {
  return ParallelExecutor(cfg).find(units, batch);
}

}  // namespace soam
