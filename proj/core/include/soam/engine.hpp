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

#include <cstdint>
#include <optional>
#include <vector>

#include "soam/network.hpp"
#include "soam/sampling.hpp"
#include "soam/stats.hpp"
#include "soam/winners.hpp"

namespace soam {

/// Learning parameters shared by every engine variant.
struct EngineParams {
  double eps_b = 0.1;   // winner learning rate
  double eps_n = 0.01;  // neighbor learning rate
  double theta0 = 0.2;  // initial insertion threshold
  std::uint32_t max_age = 200;
  double tau_b = 0.05;  // winner habituation decay
  double tau_n = 0.005; // neighbor habituation decay
  double h_threshold = 0.3;
  double rho = 0.8;     // threshold shrink factor
  int ring_patience = 600;
  /// Units that have not won for idle_factor * V updates are removed; 0 = off.
  double idle_factor = 50.0;
  std::uint64_t max_signals = 20'000'000;
  bool allow_boundary = false;

  /// Throws ArgumentError on out-of-range values.
  void validate() const;
};

/// Moves the winner by eps_b and each connected neighbor by eps_n toward
/// the signal.
void adapt(Network& net, const Vec3& signal, UnitId winner, double eps_b,
           double eps_n);

/// Multiplicative decay: h_b *= 1 - tau_b, h_i *= 1 - tau_n for neighbors.
void habituate(Network& net, UnitId winner, double tau_b, double tau_n);

/// Inserts a unit halfway between the winner and the signal when the signal
/// lies beyond the winner's threshold and the winner is habituated. The new
/// unit takes the winner's threshold and replaces the winner-second edge by
/// edges to both. Returns the new id, if any.
std::optional<UnitId> maybe_insert(Network& net, const Vec3& signal,
                                   const WinnerResult& wr, double h_threshold);

/// Shrinks the winner's threshold by rho after `ring_patience` consecutive
/// habituated wins with an inconsistent link ring.
void adapt_threshold(Network& net, UnitId winner, const EngineParams& p);

/// Updates between two idle sweeps.
inline constexpr std::uint64_t kIdleSweepPeriod = 1024;

/// Removes every unit whose last win is more than `idle_factor * V` clock
/// ticks old, then any unit those removals left isolated. Never goes below
/// two units. Returns the number of units removed.
std::size_t remove_idle_units(Network& net, double idle_factor);

struct UpdateOutcome {
  bool inserted = false;
  PruneResult pruned;
  std::size_t idle_removed = 0;
};

/// One full Update phase for a signal, in the order: tick the clock and
/// stamp the winner, connect/reset winner and second, age the winner's other
/// edges, adapt, habituate, insert, prune, adapt the winner's threshold, and
/// every kIdleSweepPeriod ticks remove idle units.
UpdateOutcome update_single(Network& net, const Vec3& signal,
                            const WinnerResult& wr, const EngineParams& p);

/// Full-scan termination test: at least four units, all habituated, all
/// link rings disks (or half-disks when boundaries are allowed).
bool is_converged(const Network& net, const EngineParams& p);

/// Incremental equivalent of `is_converged`. Attach to the network before
/// the first unit is added.
class ConvergenceTracker final : public NetworkObserver {
 public:
  ConvergenceTracker(const Network& net, const EngineParams& p);
  ConvergenceTracker(const ConvergenceTracker&) = delete;
  ConvergenceTracker& operator=(const ConvergenceTracker&) = delete;

  bool converged();
  /// Units currently failing the test (after flushing pending changes).
  std::size_t failing();

  void on_unit_added(UnitId id, const Vec3&) override;
  void on_unit_removed(UnitId id, const Vec3&) override;
  void on_edge_added(UnitId a, UnitId b) override;
  void on_edge_removed(UnitId a, UnitId b) override;
  void on_unit_state_changed(UnitId id) override;

 private:
  enum : std::uint8_t { kDead = 0, kAlive = 1, kHabOk = 2, kRingOk = 4, kRingDirty = 8 };
  void ensure(UnitId id);
  void set_flags(UnitId id, std::uint8_t flags);
  void mark_ring(UnitId id);
  void flush();

  const Network& net_;
  double h_threshold_;
  bool allow_boundary_;
  std::vector<std::uint8_t> flags_;
  std::vector<UnitId> dirty_;
  std::size_t bad_ = 0;
};

/// Options controlling when a run stops besides convergence, and which
/// network sizes are recorded as checkpoints.
struct RunControl {
  std::vector<std::size_t> checkpoint_units;
  /// Stop (unconverged) once the network reaches this many units; 0 = off.
  std::size_t stop_at_units = 0;
};

struct RunResult {
  RunStats stats;
  Network network;
};

/// Single-signal run. With `index_cube` set, Find Winners goes through a
/// hash grid of that cell size ("indexed" variant); otherwise it scans all
/// units ("single" variant).
RunResult run_single(const SignalSource& source, const EngineParams& p,
                     std::uint64_t seed,
                     std::optional<double> index_cube = std::nullopt,
                     const RunControl& control = {});

}  // namespace soam
