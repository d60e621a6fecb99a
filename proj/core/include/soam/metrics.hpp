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
#include <span>
#include <string>
#include <vector>

#include "soam/network.hpp"
#include "soam/stats.hpp"

namespace soam {

/// Triangulation read off a network: one face per 3-clique.
struct TriMesh {
  std::vector<Vec3> vertices;
  /// Unit id of each vertex (ascending). Empty for meshes loaded from disk.
  std::vector<UnitId> unit_ids;
  std::vector<std::array<std::uint32_t, 3>> faces;
  /// Edges lying on exactly one face; set by `manifold_check`.
  std::size_t boundary_edge_count = 0;
};

enum class ManifoldClass { Closed, WithBoundary, NonManifold };

const char* to_string(ManifoldClass c);

TriMesh extract_mesh(const Network& net);

/// Closed: every edge lies on exactly two faces. WithBoundary: every edge on
/// one or two faces and the one-face edges form disjoint simple cycles.
/// Anything else, including a mesh with no faces, is NonManifold.
ManifoldClass manifold_check(TriMesh& mesh);
ManifoldClass manifold_check(const TriMesh& mesh);

struct MeshCounts {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  long euler() const {
    return static_cast<long>(vertices) - static_cast<long>(edges) +
           static_cast<long>(faces);
  }
};

MeshCounts count_elements(const TriMesh& mesh);

/// Number of connected components over vertices (isolated vertices count).
std::size_t component_count(const TriMesh& mesh);

/// g = (2 - (V - E + F)) / 2. Requires a closed, connected mesh.
int genus(const TriMesh& mesh);

/// Mean squared distance from each probe to its nearest unit.
double quantization_error(const Network& net, std::span<const Vec3> probes);

/// Column order of the stats CSV.
inline constexpr std::array<const char*, 15> kStatsColumns = {
    "variant", "dataset",  "seed",    "iterations", "signals",
    "discarded", "units",  "connections", "total_s", "sample_s",
    "find_s",  "update_s", "time_per_signal_s", "find_per_signal_s",
    "converged"};

std::string stats_csv_header();
std::string stats_csv_row(const RunStats& s);
void write_stats_csv(const std::string& path, std::span<const RunStats> rows);

}  // namespace soam
