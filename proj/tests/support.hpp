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

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "soam/network.hpp"
#include "soam/rng.hpp"

namespace soam::testing {

// Four units on a regular tetrahedron, fully connected.
inline std::vector<UnitId> make_tetrahedron(Network& net, double threshold = 0.5) {
  const Vec3 corners[] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<UnitId> ids;
  for (const auto& c : corners) ids.push_back(net.add_unit(c, threshold));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) net.connect_or_reset(ids[i], ids[j]);
  }
  return ids;
}

// Octahedron: six units, twelve edges, every link ring a 4-cycle.
inline std::vector<UnitId> make_octahedron(Network& net, double threshold = 0.5) {
  const Vec3 corners[] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                          {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<UnitId> ids;
  for (const auto& c : corners) ids.push_back(net.add_unit(c, threshold));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (j != (i ^ 1u)) net.connect_or_reset(ids[i], ids[j]);  // skip antipodes
    }
  }
  return ids;
}

// Sorted (neighbor, age) pairs of a unit.
inline std::vector<std::pair<UnitId, std::uint32_t>> edges_of(const Network& net, UnitId id) {
  std::vector<std::pair<UnitId, std::uint32_t>> out;
  for (const auto& n : net.neighbors(id)) out.emplace_back(n.id, n.age);
  std::sort(out.begin(), out.end());
  return out;
}

// Bitwise comparison of everything an update can touch.
inline ::testing::AssertionResult same_network(const Network& a, const Network& b) {
  if (a.sorted_ids() != b.sorted_ids()) return ::testing::AssertionFailure() << "unit sets differ";
  if (a.edge_count() != b.edge_count()) return ::testing::AssertionFailure() << "edge counts differ";
  for (UnitId id : a.sorted_ids()) {
    const Unit& ua = a.unit(id);
    const Unit& ub = b.unit(id);
    if (!(ua.position == ub.position)) {
      return ::testing::AssertionFailure() << "position of unit " << id;
    }
    if (ua.habituation != ub.habituation || ua.local_threshold != ub.local_threshold ||
        ua.ring_strikes != ub.ring_strikes || ua.last_win != ub.last_win) {
      return ::testing::AssertionFailure() << "learning state of unit " << id;
    }
    if (edges_of(a, id) != edges_of(b, id)) {
      return ::testing::AssertionFailure() << "edges of unit " << id;
    }
  }
  return ::testing::AssertionSuccess();
}

inline Vec3 random_point(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("soam_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    const std::string p = file(name);
    std::ofstream(p) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace soam::testing
