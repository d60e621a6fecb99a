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
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "soam/vec3.hpp"

namespace soam {

/// Stable unit handle. Ids are issued in increasing order and never reused
/// within the lifetime of a Network.
using UnitId = std::uint32_t;
inline constexpr UnitId kNoUnit = std::numeric_limits<UnitId>::max();

/// Shape of the subgraph induced on a unit's neighbors.
enum class RingClass { Disk, HalfDisk, Inconsistent };

const char* to_string(RingClass c);

struct Unit {
  UnitId id = kNoUnit;
  Vec3 position;
  /// 1 when fresh, decays toward 0 with every win.
  double habituation = 1.0;
  /// Insertion threshold used when this unit wins.
  double local_threshold = 0.0;
  /// Consecutive habituated wins with an inconsistent link ring.
  int ring_strikes = 0;
  /// Network clock at the unit's last win (or creation).
  std::uint64_t last_win = 0;
  bool alive = false;
};

struct Neighbor {
  UnitId id;
  std::uint32_t age;
};

enum class ConnectResult { Created, Reset };

struct PruneResult {
  std::size_t edges_removed = 0;
  std::size_t units_removed = 0;

  friend bool operator==(const PruneResult&, const PruneResult&) = default;
};

/// Dense, id-ordered copy of the alive unit positions. Readers may share a
/// snapshot across threads; it never aliases network storage.
struct Snapshot {
  std::vector<Vec3> positions;
  std::vector<UnitId> ids;

  std::size_t size() const { return ids.size(); }
};

/// Non-owning pair of parallel arrays accepted by the winner searches.
struct PositionView {
  std::span<const Vec3> positions;
  std::span<const UnitId> ids;

  PositionView() = default;
  PositionView(std::span<const Vec3> p, std::span<const UnitId> i)
      : positions(p), ids(i) {}
  PositionView(const Snapshot& s)  // NOLINT(google-explicit-constructor)
      : positions(s.positions), ids(s.ids) {}

  std::size_t size() const { return ids.size(); }
};

/// Mutation hooks. Callbacks fire after the network has been updated, except
/// `on_unit_removed`, which fires after the unit's edges are gone but while
/// its last position is still readable.
class NetworkObserver {
 public:
  virtual ~NetworkObserver() = default;
  virtual void on_unit_added(UnitId, const Vec3&) {}
  virtual void on_unit_removed(UnitId, const Vec3&) {}
  virtual void on_unit_moved(UnitId, const Vec3& /*from*/, const Vec3& /*to*/) {}
  virtual void on_edge_added(UnitId, UnitId) {}
  virtual void on_edge_removed(UnitId, UnitId) {}
  /// Habituation or threshold changed.
  virtual void on_unit_state_changed(UnitId) {}
};

/// Growable undirected graph of units with aged edges.
///
/// Storage is id-indexed; in addition the alive units are kept in a packed
/// (unordered) position array so exhaustive scans never touch dead slots.
/// Mutation is single-threaded.
class Network {
 public:
  Network() = default;
  Network(const Network&) = default;
  Network& operator=(const Network&) = default;
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  UnitId add_unit(const Vec3& position, double threshold);
  void remove_unit(UnitId id);

  ConnectResult connect_or_reset(UnitId a, UnitId b);
  /// Removes edge a-b if present; returns whether it existed.
  bool disconnect(UnitId a, UnitId b);

  /// Adds `increment` to the age of every edge incident to `b`, skipping the
  /// edge to `except` when given.
  void age_incident_edges(UnitId b, std::uint32_t increment,
                          UnitId except = kNoUnit);

  /// Removes every edge older than `max_age`, then every isolated unit while
  /// more than two units remain.
  PruneResult prune(std::uint32_t max_age);

  /// Same as `prune`, restricted to edges incident to `b` and the units they
  /// touch. Equivalent to `prune` whenever all other edges are within
  /// `max_age` and no other unit is isolated, which the engines maintain.
  PruneResult prune_incident(UnitId b, std::uint32_t max_age);

  RingClass link_ring(UnitId id) const;

  void set_position(UnitId id, const Vec3& p);
  void set_habituation(UnitId id, double h);
  void set_local_threshold(UnitId id, double theta);
  void set_ring_strikes(UnitId id, int strikes);

  /// Update counter maintained by the engines; new units are stamped with it.
  std::uint64_t clock() const { return clock_; }
  std::uint64_t tick() { return ++clock_; }
  void mark_win(UnitId id);

  bool is_alive(UnitId id) const {
    return id < units_.size() && units_[id].alive;
  }
  const Unit& unit(UnitId id) const {
    require_alive(id, "unit");
    return units_[id];
  }
  const Vec3& position(UnitId id) const { return unit(id).position; }
  std::span<const Neighbor> neighbors(UnitId id) const {
    require_alive(id, "neighbors");
    return adjacency_[id];
  }
  bool connected(UnitId a, UnitId b) const;
  std::optional<std::uint32_t> edge_age(UnitId a, UnitId b) const;

  std::size_t unit_count() const { return packed_ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  /// One past the largest id ever issued.
  std::size_t id_bound() const { return units_.size(); }

  /// Alive units in unspecified order, kept in step with `packed_ids`.
  std::span<const Vec3> packed_positions() const { return packed_pos_; }
  std::span<const UnitId> packed_ids() const { return packed_ids_; }
  PositionView view() const { return {packed_pos_, packed_ids_}; }

  std::vector<UnitId> sorted_ids() const;
  Snapshot snapshot() const;

  /// Throws StateError when any structural invariant is violated.
  void audit() const;

  void add_observer(NetworkObserver* obs);
  void remove_observer(NetworkObserver* obs);

 private:
  Unit& mutable_unit(UnitId id) {
    require_alive(id, "unit");
    return units_[id];
  }
  // Inline so the hot accessors cost one compare; the throw stays out of line.
  void require_alive(UnitId id, const char* op) const {
    if (!is_alive(id)) [[unlikely]] throw_not_alive(id, op);
  }
  [[noreturn]] static void throw_not_alive(UnitId id, const char* op);
  void detach_edge(UnitId a, UnitId b);

  std::vector<Unit> units_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::uint32_t> slot_;
  std::vector<Vec3> packed_pos_;
  std::vector<UnitId> packed_ids_;
  std::size_t edge_count_ = 0;
  std::uint64_t clock_ = 0;

  // Copies of a network start without observers.
  struct ObserverList {
    std::vector<NetworkObserver*> items;
    ObserverList() = default;
    ObserverList(const ObserverList&) {}
    ObserverList& operator=(const ObserverList&) { return *this; }
    ObserverList(ObserverList&&) noexcept = default;
    ObserverList& operator=(ObserverList&&) noexcept = default;
  };
  ObserverList observers_;
};

}  // namespace soam
