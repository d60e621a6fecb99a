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

#include "soam/engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "soam/errors.hpp"
#include "soam/spatial_index.hpp"

namespace soam {

void EngineParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ArgumentError(std::string("invalid parameter: ") + what);
  };
  require(eps_b >= 0.0 && eps_b <= 1.0, "eps_b must lie in [0,1]");
  require(eps_n >= 0.0 && eps_n <= 1.0, "eps_n must lie in [0,1]");
  require(eps_n < eps_b, "eps_n must be smaller than eps_b");
  require(theta0 > 0.0 && std::isfinite(theta0), "theta0 must be positive");
  require(tau_b > 0.0 && tau_b < 1.0, "tau_b must lie in (0,1)");
  require(tau_n > 0.0 && tau_n < 1.0, "tau_n must lie in (0,1)");
  require(h_threshold > 0.0 && h_threshold < 1.0, "h_T must lie in (0,1)");
  require(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
  require(ring_patience >= 1, "ring_patience must be at least 1");
  require(max_signals >= 1, "max_signals must be at least 1");
  require(idle_factor >= 0.0 && std::isfinite(idle_factor), "idle_factor must be >= 0");
}

void adapt(Network& net, const Vec3& signal, UnitId winner, double eps_b,
           double eps_n) {
  const Vec3 wb = net.position(winner);
  net.set_position(winner, wb + eps_b * (signal - wb));
  if (eps_n == 0.0) return;
  for (const auto& n : net.neighbors(winner)) {
    const Vec3 wi = net.position(n.id);
    net.set_position(n.id, wi + eps_n * (signal - wi));
  }
}

void habituate(Network& net, UnitId winner, double tau_b, double tau_n) {
  net.set_habituation(winner, net.unit(winner).habituation * (1.0 - tau_b));
  if (tau_n == 0.0) return;
  for (const auto& n : net.neighbors(winner)) {
    net.set_habituation(n.id, net.unit(n.id).habituation * (1.0 - tau_n));
  }
}

std::optional<UnitId> maybe_insert(Network& net, const Vec3& signal,
                                   const WinnerResult& wr, double h_threshold) {
  if (!net.is_alive(wr.winner) || !net.is_alive(wr.second) || wr.winner == wr.second) {
    throw StateError("maybe_insert: winner result refers to dead units");
  }
  const Unit& b = net.unit(wr.winner);
  if (!(wr.d_winner > b.local_threshold) || !(b.habituation < h_threshold)) {
    return std::nullopt;
  }
  const UnitId r = net.add_unit((b.position + signal) * 0.5, b.local_threshold);
  net.connect_or_reset(r, wr.winner);
  net.connect_or_reset(r, wr.second);
  net.disconnect(wr.winner, wr.second);
  return r;
}

void adapt_threshold(Network& net, UnitId winner, const EngineParams& p) {
  const Unit& u = net.unit(winner);
  if (!(u.habituation < p.h_threshold)) return;
  if (net.link_ring(winner) != RingClass::Inconsistent) {
    if (u.ring_strikes != 0) net.set_ring_strikes(winner, 0);
    return;
  }
  const int strikes = u.ring_strikes + 1;
  if (strikes >= p.ring_patience) {
    net.set_local_threshold(winner, u.local_threshold * p.rho);
    net.set_ring_strikes(winner, 0);
  } else {
    net.set_ring_strikes(winner, strikes);
  }
}

std::size_t remove_idle_units(Network& net, double idle_factor) {
  const double limit = idle_factor * static_cast<double>(net.unit_count());
  const std::uint64_t now = net.clock();
  std::vector<UnitId> idle;
  for (UnitId id : net.packed_ids()) {
    if (static_cast<double>(now - net.unit(id).last_win) > limit) idle.push_back(id);
  }
  std::sort(idle.begin(), idle.end());
  std::size_t removed = 0;
  std::vector<UnitId> touched;
  for (UnitId id : idle) {
    if (net.unit_count() <= 2) return removed;
    for (const auto& n : net.neighbors(id)) touched.push_back(n.id);
    net.remove_unit(id);
    ++removed;
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (UnitId id : touched) {
    if (net.unit_count() <= 2) break;
    if (net.is_alive(id) && net.neighbors(id).empty()) {
      net.remove_unit(id);
      ++removed;
    }
  }
  return removed;
}

UpdateOutcome update_single(Network& net, const Vec3& signal, const WinnerResult& wr,
                            const EngineParams& p) {
  const UnitId b = wr.winner;
  const UnitId s = wr.second;
  if (!net.is_alive(b) || !net.is_alive(s)) {
    throw StateError("update_single: winner result refers to dead units");
  }
  UpdateOutcome out;
  const std::uint64_t now = net.tick();
  net.mark_win(b);
  net.connect_or_reset(b, s);
  net.age_incident_edges(b, 1, s);
  adapt(net, signal, b, p.eps_b, p.eps_n);
  habituate(net, b, p.tau_b, p.tau_n);
  out.inserted = maybe_insert(net, signal, wr, p.h_threshold).has_value();
  out.pruned = net.prune_incident(b, p.max_age);
  if (net.is_alive(b)) adapt_threshold(net, b, p);
  if (p.idle_factor > 0.0 && now % kIdleSweepPeriod == 0) {
    out.idle_removed = remove_idle_units(net, p.idle_factor);
  }
  return out;
}

namespace {

bool ring_accepted(RingClass c, bool allow_boundary) {
  return c == RingClass::Disk || (allow_boundary && c == RingClass::HalfDisk);
}

}  // namespace

bool is_converged(const Network& net, const EngineParams& p) {
  if (net.unit_count() < 4) return false;
  for (UnitId id : net.packed_ids()) {
    if (!(net.unit(id).habituation < p.h_threshold)) return false;
    if (!ring_accepted(net.link_ring(id), p.allow_boundary)) return false;
  }
  return true;
}

ConvergenceTracker::ConvergenceTracker(const Network& net, const EngineParams& p)
    : net_(net), h_threshold_(p.h_threshold), allow_boundary_(p.allow_boundary) {
  for (UnitId id : net.sorted_ids()) on_unit_added(id, net.position(id));
}

void ConvergenceTracker::ensure(UnitId id) {
  if (flags_.size() <= id) flags_.resize(id + 1, kDead);
}

void ConvergenceTracker::set_flags(UnitId id, std::uint8_t flags) {
  const auto ok = [](std::uint8_t f) {
    return (f & kHabOk) && (f & kRingOk) && !(f & kRingDirty);
  };
  const bool was_bad = flags_[id] != kDead && !ok(flags_[id]);
  const bool is_bad = flags != kDead && !ok(flags);
  if (was_bad && !is_bad) --bad_;
  if (!was_bad && is_bad) ++bad_;
  flags_[id] = flags;
}

void ConvergenceTracker::mark_ring(UnitId id) {
  if (id >= flags_.size() || flags_[id] == kDead) return;
  if (flags_[id] & kRingDirty) return;
  set_flags(id, flags_[id] | kRingDirty);
  dirty_.push_back(id);
}

void ConvergenceTracker::on_unit_added(UnitId id, const Vec3&) {
  ensure(id);
  std::uint8_t f = kAlive | kRingDirty;
  if (net_.unit(id).habituation < h_threshold_) f |= kHabOk;
  set_flags(id, f);
  dirty_.push_back(id);
}

void ConvergenceTracker::on_unit_removed(UnitId id, const Vec3&) {
  set_flags(id, kDead);
}

void ConvergenceTracker::on_edge_added(UnitId a, UnitId b) {
  mark_ring(a);
  mark_ring(b);
  for (const auto& n : net_.neighbors(a)) mark_ring(n.id);
  for (const auto& n : net_.neighbors(b)) mark_ring(n.id);
}

void ConvergenceTracker::on_edge_removed(UnitId a, UnitId b) { on_edge_added(a, b); }

void ConvergenceTracker::on_unit_state_changed(UnitId id) {
  if (id >= flags_.size() || flags_[id] == kDead) return;
  std::uint8_t f = flags_[id] & ~kHabOk;
  if (net_.unit(id).habituation < h_threshold_) f |= kHabOk;
  if (f != flags_[id]) set_flags(id, f);
}

void ConvergenceTracker::flush() {
  for (UnitId id : dirty_) {
    if (flags_[id] == kDead || !(flags_[id] & kRingDirty)) continue;
    std::uint8_t f = kAlive | (flags_[id] & kHabOk);
    if (ring_accepted(net_.link_ring(id), allow_boundary_)) f |= kRingOk;
    set_flags(id, f);
  }
  dirty_.clear();
}

bool ConvergenceTracker::converged() {
  if (net_.unit_count() < 4) return false;
  // Habituation failures are known without ring work.
  if (bad_ > dirty_.size()) return false;
  flush();
  return bad_ == 0;
}

std::size_t ConvergenceTracker::failing() {
  flush();
  return bad_;
}

RunResult run_single(const SignalSource& source, const EngineParams& p,
                     std::uint64_t seed, std::optional<double> index_cube,
                     const RunControl& control) {
  p.validate();
  RunResult result;
  RunStats& st = result.stats;
  st.variant = index_cube ? "indexed" : "single";
  st.dataset = source.name();
  st.seed = seed;

  Network& net = result.network;
  Rng rng(seed);
  ConvergenceTracker tracker(net, p);
  net.add_observer(&tracker);
  std::unique_ptr<HashGrid> grid;
  if (index_cube) {
    const Bounds bb = source.bounds();
    grid = std::make_unique<HashGrid>(bb.min, bb.max, *index_cube);
    net.add_observer(grid.get());
  }

  const Vec3 first = source.sample(rng);
  const Vec3 second = source.sample(rng);
  net.add_unit(first, p.theta0);
  net.add_unit(second, p.theta0);

  std::vector<std::size_t> checkpoints = control.checkpoint_units;
  std::sort(checkpoints.begin(), checkpoints.end());
  std::size_t next_checkpoint = 0;

  const auto t0 = PhaseTimer::Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(PhaseTimer::Clock::now() - t0).count();
  };
  while (st.signals < p.max_signals) {
    Vec3 signal;
    WinnerResult wr;
    {
      PhaseTimer t(st.sample_s);
      signal = source.sample(rng);
    }
    {
      PhaseTimer t(st.find_s);
      wr = grid ? grid->query_winners(net.view(), signal)
                : find_winners_exhaustive(net.view(), signal);
    }
    bool done = false;
    {
      PhaseTimer t(st.update_s);
      update_single(net, signal, wr, p);
      done = tracker.converged();
    }
    ++st.signals;
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
    if (control.stop_at_units != 0 && net.unit_count() >= control.stop_at_units) break;
  }
  st.total_s = elapsed();
  st.units = net.unit_count();
  st.connections = net.edge_count();
  net.remove_observer(&tracker);
  if (grid) net.remove_observer(grid.get());
  return result;
}

}  // namespace soam
