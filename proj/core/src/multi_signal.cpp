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

#include "soam/multi_signal.hpp"

#include <algorithm>
#include <bit>

#include "soam/errors.hpp"

namespace soam {

std::size_t batch_size(std::size_t units, std::size_t cap, std::size_t floor) {
  // bit_ceil(V + 1) is the least power of two strictly above V.
  std::size_t m = std::bit_ceil(units + 1);
  m = std::max(m, floor);
  return std::min(m, cap);
}

std::vector<WinnerResult> batch_find_winners(const PositionView& units,
                                             std::span<const Vec3> batch) {
  if (units.size() < 2) throw StateError("batch_find_winners: need at least 2 units");
  std::vector<WinnerResult> out;
  out.reserve(batch.size());
  for (const auto& s : batch) out.push_back(find_winners_exhaustive(units, s));
  return out;
}

BatchOutcome resolve_and_update(Network& net, std::span<const Vec3> batch,
                                std::span<const WinnerResult> winners,
                                const EngineParams& p) {
  if (batch.size() != winners.size()) {
    throw ArgumentError("resolve_and_update: batch and winner counts differ");
  }
  BatchOutcome out;
  std::vector<char> claimed(net.id_bound(), 0);
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const WinnerResult& wr = winners[j];
    if (wr.winner >= claimed.size() || claimed[wr.winner] || !net.is_alive(wr.winner) ||
        !net.is_alive(wr.second)) {
      ++out.discarded;
      continue;
    }
    claimed[wr.winner] = 1;
    if (update_single(net, batch[j], wr, p).inserted) ++out.inserted_units;
    ++out.processed;
  }
  return out;
}

RunResult run_multi(const SignalSource& source, const EngineParams& p,
                    std::uint64_t seed, const BatchFinder& finder,
                    const MultiOptions& opts) {
  p.validate();
  if (opts.cap == 0) throw ArgumentError("run_multi: cap must be positive");
  RunResult result;
  RunStats& st = result.stats;
  st.variant = opts.variant;
  st.dataset = source.name();
  st.seed = seed;

  Network& net = result.network;
  Rng rng(seed);
  ConvergenceTracker tracker(net, p);
  net.add_observer(&tracker);
  const Vec3 first = source.sample(rng);
  const Vec3 second = source.sample(rng);
  net.add_unit(first, p.theta0);
  net.add_unit(second, p.theta0);

  std::vector<std::size_t> checkpoints = opts.control.checkpoint_units;
  std::sort(checkpoints.begin(), checkpoints.end());
  std::size_t next_checkpoint = 0;

  std::vector<Vec3> batch;
  std::vector<WinnerResult> winners;
  const auto t0 = PhaseTimer::Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(PhaseTimer::Clock::now() - t0).count();
  };
  while (st.signals < p.max_signals) {
    const std::size_t m = batch_size(net.unit_count(), opts.cap, opts.floor);
    {
      PhaseTimer t(st.sample_s);
      batch.resize(m);
      for (auto& s : batch) s = source.sample(rng);
    }
    {
      PhaseTimer t(st.find_s);
      const Snapshot snap = net.snapshot();
      winners = finder(snap, batch);
    }
    bool done = false;
    {
      PhaseTimer t(st.update_s);
      const BatchOutcome o = resolve_and_update(net, batch, winners, p);
      st.discarded += o.discarded;
      done = tracker.converged();
    }
    st.signals += m;
    ++st.iterations;
    while (next_checkpoint < checkpoints.size() &&
           net.unit_count() >= checkpoints[next_checkpoint]) {
      st.checkpoints.push_back({net.unit_count(), st.signals, elapsed(), st.find_s});
      ++next_checkpoint;
    }
    if (done) {
      st.converged = true;
      break;
    }
    if (opts.control.stop_at_units != 0 && net.unit_count() >= opts.control.stop_at_units) {
      break;
    }
  }
  st.total_s = elapsed();
  st.units = net.unit_count();
  st.connections = net.edge_count();
  net.remove_observer(&tracker);
  return result;
}

}  // namespace soam
