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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "soam/errors.hpp"
#include "soam/metrics.hpp"
#include "support.hpp"

namespace soam {
namespace {

using testing::make_octahedron;
using testing::make_tetrahedron;
using testing::random_point;

TEST(ExtractMesh, TetrahedronHasFourFaces) {
  Network net;
  make_tetrahedron(net);
  TriMesh m = extract_mesh(net);
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.faces.size(), 4u);
  EXPECT_EQ(manifold_check(m), ManifoldClass::Closed);
  EXPECT_EQ(genus(m), 0);
}

TEST(ExtractMesh, TriangleFreeGraphHasNoFaces) {
  Network net;
  std::vector<UnitId> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(net.add_unit({1.0 * i, 0, 0}, 0.5));
  for (int i = 0; i < 4; ++i) net.connect_or_reset(ids[i], ids[(i + 1) % 4]);
  TriMesh m = extract_mesh(net);
  EXPECT_TRUE(m.faces.empty());
  EXPECT_EQ(manifold_check(m), ManifoldClass::NonManifold);
  EXPECT_THROW(genus(m), StateError);
}

TEST(ExtractMesh, VerticesFollowAscendingIds) {
  Network net;
  make_octahedron(net);
  net.remove_unit(0);
  const TriMesh m = extract_mesh(net);
  EXPECT_EQ(m.unit_ids, net.sorted_ids());
  for (std::size_t i = 0; i < m.unit_ids.size(); ++i) {
    EXPECT_EQ(m.vertices[i], net.position(m.unit_ids[i]));
  }
}

TriMesh mesh_of(std::size_t verts, std::vector<std::array<std::uint32_t, 3>> faces) {
  TriMesh m;
  m.vertices.assign(verts, Vec3{});
  m.faces = std::move(faces);
  return m;
}

TEST(ManifoldCheck, Classes) {
  TriMesh closed = mesh_of(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  EXPECT_EQ(manifold_check(closed), ManifoldClass::Closed);
  EXPECT_EQ(closed.boundary_edge_count, 0u);

  // Square split in two: four boundary edges forming one cycle.
  TriMesh square = mesh_of(4, {{0, 1, 2}, {0, 2, 3}});
  EXPECT_EQ(manifold_check(square), ManifoldClass::WithBoundary);
  EXPECT_EQ(square.boundary_edge_count, 4u);

  // Three faces on one edge.
  TriMesh fin = mesh_of(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  EXPECT_EQ(manifold_check(fin), ManifoldClass::NonManifold);

  // Two triangles sharing only a vertex: the boundary pinches.
  TriMesh bowtie = mesh_of(5, {{0, 1, 2}, {0, 3, 4}});
  EXPECT_EQ(manifold_check(bowtie), ManifoldClass::NonManifold);

  EXPECT_EQ(manifold_check(mesh_of(0, {})), ManifoldClass::NonManifold);
}

TEST(Genus, TwoTetrahedraAreNotConnected) {
  TriMesh two = mesh_of(8, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3},
                            {4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}});
  EXPECT_EQ(manifold_check(two), ManifoldClass::Closed);
  EXPECT_EQ(component_count(two), 2u);
  EXPECT_THROW(genus(two), StateError);
}

// Minimal 7-vertex torus (Csaszar): V=7, E=21, F=14.
TEST(Genus, SevenVertexTorus) {
  std::vector<std::array<std::uint32_t, 3>> faces;
  for (std::uint32_t i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  const TriMesh t = mesh_of(7, faces);
  EXPECT_EQ(manifold_check(t), ManifoldClass::Closed);
  const MeshCounts c = count_elements(t);
  EXPECT_EQ(c.edges, 21u);
  EXPECT_EQ(c.euler(), 0);
  EXPECT_EQ(genus(t), 1);
}

TEST(QuantizationError, Examples) {
  Network net;
  net.add_unit({0, 0, 0}, 0.5);
  net.add_unit({1, 0, 0}, 0.5);
  const std::vector<Vec3> on = {{0, 0, 0}, {1, 0, 0}};
  EXPECT_DOUBLE_EQ(quantization_error(net, on), 0.0);
  const std::vector<Vec3> off = {{0.5, 0, 0}};
  EXPECT_DOUBLE_EQ(quantization_error(net, off), 0.25);
  EXPECT_THROW(quantization_error(net, std::vector<Vec3>{}), ArgumentError);
}

TEST(StatsCsv, HeaderAndRow) {
  RunStats s;
  s.variant = "multi";
  s.dataset = "torus:2,0.5";
  s.seed = 3;
  s.signals = 128;
  s.discarded = 5;
  s.converged = true;
  testing::TempDir dir;
  const std::vector<RunStats> rows = {s};
  write_stats_csv(dir.file("s.csv"), rows);
  const auto lines = testing::read_lines(dir.file("s.csv"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], stats_csv_header());
  EXPECT_EQ(std::count(lines[0].begin(), lines[0].end(), ','), 14);
  // The dataset contains a comma, so the row has one quoted field.
  EXPECT_NE(lines[1].find("\"torus:2,0.5\""), std::string::npos);
  EXPECT_EQ(lines[1].rfind("multi,", 0), 0u);
}

// Brute force over all triples.
std::set<std::array<UnitId, 3>> triangles_by_enumeration(const Network& net) {
  const auto ids = net.sorted_ids();
  std::set<std::array<UnitId, 3>> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!net.connected(ids[i], ids[j])) continue;
      for (std::size_t k = j + 1; k < ids.size(); ++k) {
        if (net.connected(ids[i], ids[k]) && net.connected(ids[j], ids[k])) {
          out.insert({ids[i], ids[j], ids[k]});
        }
      }
    }
  }
  return out;
}

TEST(ExtractMesh, MatchesTripleEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    Network net;
    const std::size_t n = 10 + rng() % 190;
    for (std::size_t i = 0; i < n; ++i) net.add_unit(random_point(rng), 0.5);
    const auto ids = net.sorted_ids();
    const double density = 3.0 / static_cast<double>(n) + 0.05 * rng.uniform();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.uniform() < density) net.connect_or_reset(ids[i], ids[j]);
      }
    }
    const TriMesh m = extract_mesh(net);
    std::set<std::array<UnitId, 3>> got;
    for (const auto& f : m.faces) {
      std::array<UnitId, 3> t = {m.unit_ids[f[0]], m.unit_ids[f[1]], m.unit_ids[f[2]]};
      std::sort(t.begin(), t.end());
      got.insert(t);
    }
    EXPECT_EQ(got.size(), m.faces.size()) << "duplicate face";
    EXPECT_EQ(got, triangles_by_enumeration(net)) << trial;
  }
}

TEST(Genus, InvariantUnderRelabeling) {
  // Same octahedron built with units inserted in a different order and with
  // dead ids in between.
  Network a;
  make_octahedron(a);
  Network b;
  for (int i = 0; i < 5; ++i) b.remove_unit(b.add_unit({9, 9, 9}, 0.5));
  const Vec3 corners[] = {{0, 0, -1}, {0, 0, 1}, {0, -1, 0}, {0, 1, 0}, {-1, 0, 0}, {1, 0, 0}};
  std::vector<UnitId> ids;
  for (const auto& c : corners) ids.push_back(b.add_unit(c, 0.5));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      if (j != (i ^ 1u)) b.connect_or_reset(ids[i], ids[j]);
    }
  }
  TriMesh ma = extract_mesh(a);
  TriMesh mb = extract_mesh(b);
  EXPECT_EQ(manifold_check(mb), ManifoldClass::Closed);
  EXPECT_EQ(genus(ma), genus(mb));
  EXPECT_EQ(count_elements(ma).faces, 8u);
  EXPECT_EQ(count_elements(mb).faces, 8u);
}

}  // namespace
}  // namespace soam
