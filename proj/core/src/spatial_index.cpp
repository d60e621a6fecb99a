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

#include "soam/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "soam/errors.hpp"

namespace soam {

namespace {

// 21 bits per axis in the packed cell key.
constexpr int kMaxExtent = 1 << 21;

int axis_extent(double lo, double hi, double cube) {
  const double span = hi - lo;
  if (!(span > 0.0) || std::isinf(cube)) return 1;
  const double n = std::ceil(span / cube);
  if (n >= kMaxExtent) return kMaxExtent;
  return std::max(1, static_cast<int>(n));
}

int axis_cell(double p, double lo, double cube, int extent) {
  if (std::isinf(cube)) return 0;
  const double f = std::floor((p - lo) / cube);
  if (!(f > 0.0)) return 0;  // also catches NaN
  if (f >= extent - 1) return extent - 1;
  return static_cast<int>(f);
}

}  // namespace

HashGrid::HashGrid(const Vec3& bbox_min, const Vec3& bbox_max, double cube)
    : min_(bbox_min), max_(bbox_max), cube_(cube) {
  if (!(cube > 0.0)) throw ArgumentError("HashGrid: cube size must be positive");
  if (!is_finite(bbox_min) || !is_finite(bbox_max) || bbox_max.x < bbox_min.x ||
      bbox_max.y < bbox_min.y || bbox_max.z < bbox_min.z) {
    throw ArgumentError("HashGrid: invalid bounding box");
  }
  extents_ = {axis_extent(min_.x, max_.x, cube), axis_extent(min_.y, max_.y, cube),
              axis_extent(min_.z, max_.z, cube)};
}

CellIndex HashGrid::cell_of(const Vec3& p) const {
  return {axis_cell(p.x, min_.x, cube_, extents_[0]),
          axis_cell(p.y, min_.y, cube_, extents_[1]),
          axis_cell(p.z, min_.z, cube_, extents_[2])};
}

std::uint64_t HashGrid::key(const CellIndex& c) const {
  return (static_cast<std::uint64_t>(c.i) << 42) |
         (static_cast<std::uint64_t>(c.j) << 21) | static_cast<std::uint64_t>(c.k);
}

CellIndex HashGrid::unkey(std::uint64_t k) const {
  constexpr std::uint64_t mask = (1u << 21) - 1;
  return {static_cast<int>(k >> 42), static_cast<int>((k >> 21) & mask),
          static_cast<int>(k & mask)};
}

bool HashGrid::contains(UnitId id) const {
  return id < placement_.size() && placement_[id] != kUnplaced;
}

void HashGrid::insert(UnitId id, const Vec3& p) {
  if (id == kNoUnit) throw ArgumentError("HashGrid::insert: invalid id");
  if (contains(id)) throw ArgumentError("HashGrid::insert: id already indexed");
  if (placement_.size() <= id) placement_.resize(id + 1, kUnplaced);
  const auto k = key(cell_of(p));
  auto& cell = cells_[k];
  cell.ids.push_back(id);
  cell.positions.push_back(p);
  placement_[id] = k;
  ++count_;
}

void HashGrid::erase_from_cell(std::uint64_t cell_key, UnitId id) {
  auto it = cells_.find(cell_key);
  auto& cell = it->second;
  const auto pos = std::find(cell.ids.begin(), cell.ids.end(), id) - cell.ids.begin();
  cell.ids[pos] = cell.ids.back();
  cell.positions[pos] = cell.positions.back();
  cell.ids.pop_back();
  cell.positions.pop_back();
  if (cell.ids.empty()) cells_.erase(it);
}

void HashGrid::remove(UnitId id) {
  if (!contains(id)) {
    throw NotFoundError("HashGrid::remove: unit " + std::to_string(id) + " not indexed");
  }
  erase_from_cell(placement_[id], id);
  placement_[id] = kUnplaced;
  --count_;
}

void HashGrid::relocate(UnitId id, const Vec3& p) {
  if (!contains(id)) {
    throw NotFoundError("HashGrid::relocate: unit " + std::to_string(id) +
                        " not indexed");
  }
  const auto k = key(cell_of(p));
  if (k == placement_[id]) {
    auto& cell = cells_.find(k)->second;
    const auto pos = std::find(cell.ids.begin(), cell.ids.end(), id) - cell.ids.begin();
    cell.positions[pos] = p;
    return;
  }
  erase_from_cell(placement_[id], id);
  auto& cell = cells_[k];
  cell.ids.push_back(id);
  cell.positions.push_back(p);
  placement_[id] = k;
}

const std::vector<UnitId>* HashGrid::cell_members(const CellIndex& c) const {
  auto it = cells_.find(key(c));
  return it == cells_.end() ? nullptr : &it->second.ids;
}

WinnerResult HashGrid::query_winners(const PositionView& all_units,
                                     const Vec3& signal) const {
  if (count_ < 2) {
    throw StateError("query_winners: need at least 2 units");
  }
  const CellIndex c = cell_of(signal);
  BestTwo best;
  std::size_t candidates = 0;
  for (int di = -1; di <= 1; ++di) {
    const int i = c.i + di;
    if (i < 0 || i >= extents_[0]) continue;
    for (int dj = -1; dj <= 1; ++dj) {
      const int j = c.j + dj;
      if (j < 0 || j >= extents_[1]) continue;
      for (int dk = -1; dk <= 1; ++dk) {
        const int k = c.k + dk;
        if (k < 0 || k >= extents_[2]) continue;
        auto it = cells_.find(key({i, j, k}));
        if (it == cells_.end()) continue;
        const Cell& cell = it->second;
        for (std::size_t n = 0; n < cell.ids.size(); ++n) {
          best.offer(squared_distance(cell.positions[n], signal), cell.ids[n]);
        }
        candidates += cell.ids.size();
      }
    }
  }
  if (candidates >= 2) return best.result();
  return find_winners_exhaustive(all_units, signal);
}

void HashGrid::index_all(const Network& net) {
  for (UnitId id : net.sorted_ids()) insert(id, net.position(id));
}

void HashGrid::audit(const Network& net) const {
  auto fail = [](const std::string& m) { throw StateError("HashGrid audit: " + m); };
  std::size_t seen = 0;
  std::vector<char> hit(placement_.size(), 0);
  for (const auto& [k, cell] : cells_) {
    if (cell.ids.empty()) fail("empty cell retained");
    if (cell.ids.size() != cell.positions.size()) fail("cell arrays out of step");
    for (std::size_t n = 0; n < cell.ids.size(); ++n) {
      const UnitId id = cell.ids[n];
      if (id >= placement_.size() || placement_[id] != k) fail("placement mismatch");
      if (hit[id]) fail("duplicate id " + std::to_string(id));
      hit[id] = 1;
      if (!net.is_alive(id)) fail("dead unit " + std::to_string(id) + " indexed");
      if (!(net.position(id) == cell.positions[n])) fail("stale position");
      if (!(cell_of(cell.positions[n]) == unkey(k))) fail("unit in wrong cell");
      ++seen;
    }
  }
  if (seen != count_) fail("count mismatch");
  if (seen != net.unit_count()) fail("indexed set differs from alive units");
}

}  // namespace soam
