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

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace soam {

/// Counters and timings sampled when the network first reaches a unit count.
struct Checkpoint {
  std::size_t units = 0;
  std::uint64_t signals = 0;
  double total_s = 0.0;
  double find_s = 0.0;
};

/// One row of a benchmark table: network size at termination plus
/// cumulative per-phase wall-clock time.
struct RunStats {
  std::string variant;
  std::string dataset;
  std::uint64_t seed = 0;
  /// Signals for single-signal runs, batches for multi-signal runs.
  std::uint64_t iterations = 0;
  /// Every sampled signal, discarded ones included.
  std::uint64_t signals = 0;
  std::uint64_t discarded = 0;
  std::size_t units = 0;
  std::size_t connections = 0;
  double total_s = 0.0;
  double sample_s = 0.0;
  double find_s = 0.0;
  double update_s = 0.0;
  bool converged = false;
  std::vector<Checkpoint> checkpoints;

  std::uint64_t processed() const { return signals - discarded; }
  double time_per_signal() const {
    return signals == 0 ? 0.0 : total_s / static_cast<double>(signals);
  }
  double find_per_signal() const {
    return signals == 0 ? 0.0 : find_s / static_cast<double>(signals);
  }
};

/// Accumulates monotonic-clock time into a seconds counter while in scope.
class PhaseTimer {
 public:
  using Clock = std::chrono::steady_clock;

  explicit PhaseTimer(double& sink) : sink_(sink), start_(Clock::now()) {}
  ~PhaseTimer() {
    sink_ += std::chrono::duration<double>(Clock::now() - start_).count();
  }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  double& sink_;
  Clock::time_point start_;
};

}  // namespace soam
