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

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "soam/network.hpp"
#include "soam/winners.hpp"

namespace soam {

struct CellIndex {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Uniform grid of cubes over a fixed bounding box, hashing unit ids (with
/// their positions) by cell. Positions outside the box land in the nearest
/// boundary cell.
///
/// As a NetworkObserver it follows unit insertions, removals and moves, so
/// attaching it to a network keeps it current through every update.
class HashGrid final : public NetworkObserver {
 public:
  HashGrid(const Vec3& bbox_min, const Vec3& bbox_max, double cube);

  CellIndex cell_of(const Vec3& p) const;
  const std::array<int, 3>& extents() const { return extents_; }
  double cube() const { return cube_; }

  void insert(UnitId id, const Vec3& p);
  void remove(UnitId id);
  void relocate(UnitId id, const Vec3& p);

  bool contains(UnitId id) const;
  std::size_t size() const { return count_; }
  /// Members of one cell, or nullptr when the cell is empty.
  const std::vector<UnitId>* cell_members(const CellIndex& c) const;

  /// Best two among the 27 cells around the signal's cell; falls back to
  /// scanning `all_units` when that block holds fewer than two units.
  WinnerResult query_winners(const PositionView& all_units, const Vec3& signal) const;

  /// Indexes every unit of `net` (which must not yet be observed).
  void index_all(const Network& net);

  /// Throws StateError unless the indexed set equals the alive units of
  /// `net`, with placements and stored positions matching.
  void audit(const Network& net) const;

  void on_unit_added(UnitId id, const Vec3& p) override { insert(id, p); }
  void on_unit_removed(UnitId id, const Vec3&) override { remove(id); }
  void on_unit_moved(UnitId id, const Vec3&, const Vec3& to) override {
    relocate(id, to);
  }

 private:
  struct Cell {
    std::vector<UnitId> ids;
    std::vector<Vec3> positions;
  };
  static constexpr std::uint64_t kUnplaced = ~std::uint64_t{0};

  std::uint64_t key(const CellIndex& c) const;
  CellIndex unkey(std::uint64_t k) const;
  void erase_from_cell(std::uint64_t cell_key, UnitId id);

  Vec3 min_;
  Vec3 max_;
  double cube_;
  std::array<int, 3> extents_{};
  std::unordered_map<std::uint64_t, Cell> cells_;
  std::vector<std::uint64_t> placement_;
  std::size_t count_ = 0;
};

}  // namespace soam
