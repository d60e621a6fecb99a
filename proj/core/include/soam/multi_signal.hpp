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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "soam/engine.hpp"

namespace soam {

inline constexpr std::size_t kDefaultBatchCap = 8192;
inline constexpr std::size_t kDefaultBatchFloor = 64;

/// Smallest power of two strictly greater than `units`, clamped to
/// [floor, cap].
std::size_t batch_size(std::size_t units, std::size_t cap = kDefaultBatchCap,
                       std::size_t floor = kDefaultBatchFloor);

/// Winners for every signal against one snapshot, in signal order.
std::vector<WinnerResult> batch_find_winners(const PositionView& units,
                                             std::span<const Vec3> batch);

struct BatchOutcome {
  std::size_t processed = 0;
  std::size_t discarded = 0;
  std::size_t inserted_units = 0;
};

/// Applies the updates of one batch in signal order. A signal is discarded
/// when its winner was already claimed by an earlier signal of the batch, or
/// when its winner or second died during the batch.
BatchOutcome resolve_and_update(Network& net, std::span<const Vec3> batch,
                                std::span<const WinnerResult> winners,
                                const EngineParams& p);

using BatchFinder = std::function<std::vector<WinnerResult>(
    const PositionView&, std::span<const Vec3>)>;

struct MultiOptions {
  std::size_t cap = kDefaultBatchCap;
  std::size_t floor = kDefaultBatchFloor;
  std::string variant = "multi";
  RunControl control;
};

/// Multi-signal run: each iteration samples batch_size(V) signals, finds all
/// winners against a snapshot through `finder`, then resolves the updates
/// sequentially. Convergence is tested once per batch.
RunResult run_multi(const SignalSource& source, const EngineParams& p,
                    std::uint64_t seed, const BatchFinder& finder,
                    const MultiOptions& opts = {});

}  // namespace soam
