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

#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <limits>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "soam/multi_signal.hpp"

namespace soam {

struct ExecConfig {
  /// Parallel lanes; capped by the batch size at call time.
  std::size_t workers = default_workers();
  /// Units per contiguous snapshot tile. kWholeSnapshot scans in one tile.
  std::size_t tile = 1024;

  static constexpr std::size_t kWholeSnapshot = std::numeric_limits<std::size_t>::max();
  static std::size_t default_workers();
  void validate() const;
};

/// Fixed set of worker threads running one indexed job at a time.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return threads_.size() + 1; }

  /// Calls job(0..parts-1), one part per lane, and returns when all are
  /// done. The calling thread runs part 0. parts <= size().
  void run(std::size_t parts, const std::function<void(std::size_t)>& job);

 private:
  void loop(std::size_t lane);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t parts_ = 0;
  std::size_t pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

/// Data-parallel Find Winners: signals are split into contiguous chunks, one
/// per worker, and each worker sweeps the snapshot tile by tile keeping a
/// running best-two per signal. Output is identical for every
/// (workers, tile) setting and equal to batch_find_winners.
class ParallelExecutor {
 public:
  explicit ParallelExecutor(const ExecConfig& cfg = {});

  const ExecConfig& config() const { return cfg_; }

  std::vector<WinnerResult> find(const PositionView& units,
                                 std::span<const Vec3> batch) const;

  struct Timed {
    std::vector<WinnerResult> results;
    double elapsed_s = 0.0;
  };
  Timed timed_find(const PositionView& units, std::span<const Vec3> batch) const;

  /// Adapter for run_multi. The executor must outlive the returned finder.
  BatchFinder finder() const;

 private:
  ExecConfig cfg_;
  mutable WorkerPool pool_;
};

/// One-shot convenience wrapper around ParallelExecutor.
std::vector<WinnerResult> parallel_batch_find_winners(const PositionView& units,
                                                      std::span<const Vec3> batch,
                                                      const ExecConfig& cfg);

}  // namespace soam
