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

#include "soam/network.hpp"

#include <algorithm>
#include <string>

#include "soam/errors.hpp"

namespace soam {

const char* to_string(RingClass c) {
  switch (c) {
    case RingClass::Disk:
      return "disk";
    case RingClass::HalfDisk:
      return "half_disk";
    case RingClass::Inconsistent:
      return "inconsistent";
  }
  return "?";
}

namespace {

std::string id_str(UnitId id) { return std::to_string(id); }

auto find_neighbor(std::vector<Neighbor>& list, UnitId id) {
  return std::find_if(list.begin(), list.end(),
                      [id](const Neighbor& n) { return n.id == id; });
}

auto find_neighbor(const std::vector<Neighbor>& list, UnitId id) {
  return std::find_if(list.begin(), list.end(),
                      [id](const Neighbor& n) { return n.id == id; });
}

}  // namespace

void Network::throw_not_alive(UnitId id, const char* op) {
  throw NotFoundError(std::string(op) + ": unit " + id_str(id) + " is not alive");
}

UnitId Network::add_unit(const Vec3& position, double threshold) {
  if (!is_finite(position)) {
    throw ArgumentError("add_unit: position must be finite");
  }
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ArgumentError("add_unit: threshold must be positive");
  }
  if (units_.size() >= kNoUnit) throw StateError("add_unit: id space exhausted");
  const auto id = static_cast<UnitId>(units_.size());
  Unit u;
  u.id = id;
  u.position = position;
  u.habituation = 1.0;
  u.local_threshold = threshold;
  u.last_win = clock_;
  u.alive = true;
  units_.push_back(u);
  adjacency_.emplace_back();
  slot_.push_back(static_cast<std::uint32_t>(packed_ids_.size()));
  packed_ids_.push_back(id);
  packed_pos_.push_back(position);
  for (auto* obs : observers_.items) obs->on_unit_added(id, position);
  return id;
}

void Network::remove_unit(UnitId id) {
  require_alive(id, "remove_unit");
  while (!adjacency_[id].empty()) {
    const UnitId other = adjacency_[id].back().id;
    detach_edge(id, other);
    for (auto* obs : observers_.items) obs->on_edge_removed(id, other);
  }
  const Vec3 last = units_[id].position;
  units_[id].alive = false;
  const std::uint32_t s = slot_[id];
  const UnitId moved = packed_ids_.back();
  packed_ids_[s] = moved;
  packed_pos_[s] = packed_pos_.back();
  slot_[moved] = s;
  packed_ids_.pop_back();
  packed_pos_.pop_back();
  for (auto* obs : observers_.items) obs->on_unit_removed(id, last);
}

ConnectResult Network::connect_or_reset(UnitId a, UnitId b) {
  if (a == b) throw ArgumentError("connect_or_reset: self-loop on unit " + id_str(a));
  require_alive(a, "connect_or_reset");
  require_alive(b, "connect_or_reset");
  auto it = find_neighbor(adjacency_[a], b);
  if (it != adjacency_[a].end()) {
    it->age = 0;
    find_neighbor(adjacency_[b], a)->age = 0;
    return ConnectResult::Reset;
  }
  adjacency_[a].push_back({b, 0});
  adjacency_[b].push_back({a, 0});
  ++edge_count_;
  for (auto* obs : observers_.items) obs->on_edge_added(a, b);
  return ConnectResult::Created;
}

void Network::detach_edge(UnitId a, UnitId b) {
  auto& la = adjacency_[a];
  auto& lb = adjacency_[b];
  la.erase(find_neighbor(la, b));
  lb.erase(find_neighbor(lb, a));
  --edge_count_;
}

bool Network::disconnect(UnitId a, UnitId b) {
  require_alive(a, "disconnect");
  require_alive(b, "disconnect");
  if (find_neighbor(adjacency_[a], b) == adjacency_[a].end()) return false;
  detach_edge(a, b);
  for (auto* obs : observers_.items) obs->on_edge_removed(a, b);
  return true;
}

void Network::age_incident_edges(UnitId b, std::uint32_t increment,
                                 UnitId except) {
  require_alive(b, "age_incident_edges");
  if (increment == 0) return;
  for (auto& n : adjacency_[b]) {
    if (n.id == except) continue;
    n.age += increment;
    find_neighbor(adjacency_[n.id], b)->age = n.age;
  }
}

PruneResult Network::prune(std::uint32_t max_age) {
  PruneResult r;
  std::vector<std::pair<UnitId, UnitId>> stale;
  for (UnitId a : packed_ids_) {
    for (const auto& n : adjacency_[a]) {
      if (a < n.id && n.age > max_age) stale.emplace_back(a, n.id);
    }
  }
  std::sort(stale.begin(), stale.end());
  for (auto [a, b] : stale) {
    detach_edge(a, b);
    for (auto* obs : observers_.items) obs->on_edge_removed(a, b);
    ++r.edges_removed;
  }
  for (UnitId id : sorted_ids()) {
    if (unit_count() <= 2) break;
    if (adjacency_[id].empty()) {
      remove_unit(id);
      ++r.units_removed;
    }
  }
  return r;
}

PruneResult Network::prune_incident(UnitId b, std::uint32_t max_age) {
  require_alive(b, "prune_incident");
  PruneResult r;
  std::vector<UnitId> stale;
  for (const auto& n : adjacency_[b]) {
    if (n.age > max_age) stale.push_back(n.id);
  }
  if (stale.empty()) return r;
  std::sort(stale.begin(), stale.end());
  for (UnitId other : stale) {
    detach_edge(b, other);
    for (auto* obs : observers_.items) obs->on_edge_removed(b, other);
    ++r.edges_removed;
  }
  stale.push_back(b);
  std::sort(stale.begin(), stale.end());
  for (UnitId id : stale) {
    if (unit_count() <= 2) break;
    if (adjacency_[id].empty()) {
      remove_unit(id);
      ++r.units_removed;
    }
  }
  return r;
}

RingClass Network::link_ring(UnitId id) const {
  require_alive(id, "link_ring");
  const auto& ring = adjacency_[id];
  const std::size_t k = ring.size();
  if (k < 2) return RingClass::Inconsistent;

  // Induced degrees plus one representative adjacency per ring member, enough
  // to walk a path or cycle once degrees are known to be <= 2.
  constexpr std::size_t kInline = 32;
  std::size_t degree_buf[kInline];
  std::size_t link_buf[kInline * 2];
  std::vector<std::size_t> degree_heap;
  std::vector<std::size_t> link_heap;
  std::size_t* degree = degree_buf;
  std::size_t* link = link_buf;
  if (k > kInline) {
    degree_heap.resize(k);
    link_heap.resize(2 * k);
    degree = degree_heap.data();
    link = link_heap.data();
  }
  std::size_t ends = 0;
  for (std::size_t i = 0; i < k; ++i) {
    degree[i] = 0;
    for (const auto& nn : adjacency_[ring[i].id]) {
      for (std::size_t j = 0; j < k; ++j) {
        if (ring[j].id == nn.id) {
          if (degree[i] < 2) link[2 * i + degree[i]] = j;
          ++degree[i];
          break;
        }
      }
    }
    if (degree[i] == 0 || degree[i] > 2) return RingClass::Inconsistent;
    if (degree[i] == 1) ++ends;
  }
  if (ends != 0 && ends != 2) return RingClass::Inconsistent;
  if (ends == 0 && k < 3) return RingClass::Inconsistent;

  // Walk from an endpoint (or anywhere on a cycle) and count visited members.
  std::size_t start = 0;
  if (ends == 2) {
    while (degree[start] != 1) ++start;
  }
  std::size_t prev = k;
  std::size_t cur = start;
  std::size_t visited = 1;
  while (true) {
    std::size_t next = link[2 * cur];
    if (next == prev) {
      if (degree[cur] < 2) break;
      next = link[2 * cur + 1];
    }
    if (next == start) break;
    prev = cur;
    cur = next;
    ++visited;
    if (visited > k) return RingClass::Inconsistent;
  }
  if (visited != k) return RingClass::Inconsistent;
  return ends == 0 ? RingClass::Disk : RingClass::HalfDisk;
}

void Network::set_position(UnitId id, const Vec3& p) {
  Unit& u = mutable_unit(id);
  if (!is_finite(p)) throw ArgumentError("set_position: position must be finite");
  const Vec3 from = u.position;
  u.position = p;
  packed_pos_[slot_[id]] = p;
  for (auto* obs : observers_.items) obs->on_unit_moved(id, from, p);
}

void Network::set_habituation(UnitId id, double h) {
  if (!(h >= 0.0 && h <= 1.0)) {
    throw ArgumentError("set_habituation: value must lie in [0, 1]");
  }
  mutable_unit(id).habituation = h;
  for (auto* obs : observers_.items) obs->on_unit_state_changed(id);
}

void Network::set_local_threshold(UnitId id, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ArgumentError("set_local_threshold: threshold must be positive");
  }
  mutable_unit(id).local_threshold = theta;
  for (auto* obs : observers_.items) obs->on_unit_state_changed(id);
}

void Network::set_ring_strikes(UnitId id, int strikes) {
  mutable_unit(id).ring_strikes = strikes;
}

void Network::mark_win(UnitId id) { mutable_unit(id).last_win = clock_; }

bool Network::connected(UnitId a, UnitId b) const {
  if (!is_alive(a) || !is_alive(b)) return false;
  const auto& la = adjacency_[a];
  return find_neighbor(la, b) != la.end();
}

std::optional<std::uint32_t> Network::edge_age(UnitId a, UnitId b) const {
  if (!is_alive(a) || !is_alive(b)) return std::nullopt;
  const auto& la = adjacency_[a];
  auto it = find_neighbor(la, b);
  if (it == la.end()) return std::nullopt;
  return it->age;
}

std::vector<UnitId> Network::sorted_ids() const {
  std::vector<UnitId> ids(packed_ids_.begin(), packed_ids_.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

Snapshot Network::snapshot() const {
  Snapshot s;
  s.ids = sorted_ids();
  s.positions.reserve(s.ids.size());
  for (UnitId id : s.ids) s.positions.push_back(units_[id].position);
  return s;
}

void Network::audit() const {
  auto fail = [](const std::string& msg) { throw StateError("audit: " + msg); };
  if (packed_ids_.size() != packed_pos_.size()) fail("packed arrays out of step");
  std::size_t alive = 0;
  std::size_t half_edges = 0;
  for (UnitId id = 0; id < units_.size(); ++id) {
    const Unit& u = units_[id];
    if (u.id != id) fail("unit " + id_str(id) + " carries wrong id");
    if (!u.alive) {
      if (!adjacency_[id].empty()) fail("dead unit " + id_str(id) + " has edges");
      continue;
    }
    ++alive;
    if (slot_[id] >= packed_ids_.size() || packed_ids_[slot_[id]] != id) {
      fail("unit " + id_str(id) + " missing from packed arrays");
    }
    if (!(packed_pos_[slot_[id]] == u.position)) {
      fail("packed position of " + id_str(id) + " is stale");
    }
    if (!is_finite(u.position)) fail("unit " + id_str(id) + " has non-finite position");
    if (!(u.habituation >= 0.0 && u.habituation <= 1.0)) {
      fail("unit " + id_str(id) + " habituation out of range");
    }
    if (!(u.local_threshold > 0.0)) fail("unit " + id_str(id) + " threshold not positive");
    const auto& list = adjacency_[id];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Neighbor& n = list[i];
      if (n.id == id) fail("self-loop on " + id_str(id));
      if (!is_alive(n.id)) fail("edge to dead unit " + id_str(n.id));
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (list[j].id == n.id) fail("parallel edge " + id_str(id) + "-" + id_str(n.id));
      }
      const auto& back = adjacency_[n.id];
      auto it = find_neighbor(back, id);
      if (it == back.end()) fail("asymmetric edge " + id_str(id) + "-" + id_str(n.id));
      if (it->age != n.age) fail("age mismatch on " + id_str(id) + "-" + id_str(n.id));
    }
    half_edges += list.size();
  }
  if (alive != packed_ids_.size()) fail("alive count mismatch");
  if (half_edges != 2 * edge_count_) fail("edge count mismatch");
}

void Network::add_observer(NetworkObserver* obs) {
  if (obs != nullptr) observers_.items.push_back(obs);
}

void Network::remove_observer(NetworkObserver* obs) {
  auto& v = observers_.items;
  v.erase(std::remove(v.begin(), v.end(), obs), v.end());
}

}  // namespace soam
