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

#include "soam/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "soam/errors.hpp"
#include "soam/winners.hpp"

namespace soam {

const char* to_string(ManifoldClass c) {
  switch (c) {
    case ManifoldClass::Closed:
      return "closed";
    case ManifoldClass::WithBoundary:
      return "with_boundary";
    case ManifoldClass::NonManifold:
      return "non_manifold";
  }
  return "?";
}

TriMesh extract_mesh(const Network& net) {
  TriMesh mesh;
  mesh.unit_ids = net.sorted_ids();
  std::unordered_map<UnitId, std::uint32_t> index;
  index.reserve(mesh.unit_ids.size());
  mesh.vertices.reserve(mesh.unit_ids.size());
  for (std::uint32_t i = 0; i < mesh.unit_ids.size(); ++i) {
    index.emplace(mesh.unit_ids[i], i);
    mesh.vertices.push_back(net.position(mesh.unit_ids[i]));
  }
  std::vector<UnitId> higher;
  for (UnitId a : mesh.unit_ids) {
    higher.clear();
    for (const auto& n : net.neighbors(a)) {
      if (n.id > a) higher.push_back(n.id);
    }
    std::sort(higher.begin(), higher.end());
    for (std::size_t i = 0; i < higher.size(); ++i) {
      for (std::size_t j = i + 1; j < higher.size(); ++j) {
        if (net.connected(higher[i], higher[j])) {
          mesh.faces.push_back({index[a], index[higher[i]], index[higher[j]]});
        }
      }
    }
  }
  return mesh;
}

namespace {

using EdgeKey = std::uint64_t;

EdgeKey edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<EdgeKey>(a) << 32) | b;
}

std::unordered_map<EdgeKey, int> edge_face_counts(const TriMesh& mesh) {
  std::unordered_map<EdgeKey, int> counts;
  counts.reserve(mesh.faces.size() * 2);
  for (const auto& f : mesh.faces) {
    ++counts[edge_key(f[0], f[1])];
    ++counts[edge_key(f[1], f[2])];
    ++counts[edge_key(f[2], f[0])];
  }
  return counts;
}

struct ClassifyResult {
  ManifoldClass cls;
  std::size_t boundary;
};

ClassifyResult classify(const TriMesh& mesh) {
  if (mesh.faces.empty()) return {ManifoldClass::NonManifold, 0};
  const auto counts = edge_face_counts(mesh);
  std::size_t boundary = 0;
  bool over = false;
  std::unordered_map<std::uint32_t, int> boundary_degree;
  for (const auto& [key, c] : counts) {
    if (c == 1) {
      ++boundary;
      ++boundary_degree[static_cast<std::uint32_t>(key >> 32)];
      ++boundary_degree[static_cast<std::uint32_t>(key & 0xffffffffu)];
    } else if (c != 2) {
      over = true;
    }
  }
  if (over) return {ManifoldClass::NonManifold, boundary};
  if (boundary == 0) return {ManifoldClass::Closed, 0};
  // Boundary edges split into disjoint simple cycles exactly when every
  // boundary vertex touches two of them.
  for (const auto& [v, d] : boundary_degree) {
    if (d != 2) return {ManifoldClass::NonManifold, boundary};
  }
  return {ManifoldClass::WithBoundary, boundary};
}

}  // namespace

ManifoldClass manifold_check(TriMesh& mesh) {
  const auto r = classify(mesh);
  mesh.boundary_edge_count = r.boundary;
  return r.cls;
}

ManifoldClass manifold_check(const TriMesh& mesh) { return classify(mesh).cls; }

MeshCounts count_elements(const TriMesh& mesh) {
  MeshCounts c;
  c.vertices = mesh.vertices.size();
  c.faces = mesh.faces.size();
  c.edges = edge_face_counts(mesh).size();
  return c;
}

std::size_t component_count(const TriMesh& mesh) {
  std::vector<std::uint32_t> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); };
  for (const auto& f : mesh.faces) {
    unite(f[0], f[1]);
    unite(f[1], f[2]);
  }
  std::size_t roots = 0;
  for (std::uint32_t i = 0; i < parent.size(); ++i) {
    if (find(i) == i) ++roots;
  }
  return roots;
}

int genus(const TriMesh& mesh) {
  if (manifold_check(mesh) != ManifoldClass::Closed) {
    throw StateError("genus: mesh is not a closed manifold");
  }
  if (component_count(mesh) != 1) throw StateError("genus: mesh is not connected");
  const long chi = count_elements(mesh).euler();
  if ((2 - chi) % 2 != 0) throw StateError("genus: odd Euler characteristic");
  return static_cast<int>((2 - chi) / 2);
}

double quantization_error(const Network& net, std::span<const Vec3> probes) {
  if (probes.empty()) throw ArgumentError("quantization_error: no probes");
  const auto view = net.view();
  double sum = 0.0;
  for (const auto& p : probes) {
    const auto wr = find_winners_exhaustive(view, p);
    sum += wr.d_winner * wr.d_winner;
  }
  return sum / static_cast<double>(probes.size());
}

std::string stats_csv_header() {
  std::string h;
  for (std::size_t i = 0; i < kStatsColumns.size(); ++i) {
    if (i) h += ',';
    h += kStatsColumns[i];
  }
  return h;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string stats_csv_row(const RunStats& s) {
  std::string r;
  r += csv_field(s.variant) + ',';
  r += csv_field(s.dataset) + ',';
  r += std::to_string(s.seed) + ',';
  r += std::to_string(s.iterations) + ',';
  r += std::to_string(s.signals) + ',';
  r += std::to_string(s.discarded) + ',';
  r += std::to_string(s.units) + ',';
  r += std::to_string(s.connections) + ',';
  r += num(s.total_s) + ',';
  r += num(s.sample_s) + ',';
  r += num(s.find_s) + ',';
  r += num(s.update_s) + ',';
  r += num(s.time_per_signal()) + ',';
  r += num(s.find_per_signal()) + ',';
  r += s.converged ? "1" : "0";
  return r;
}

void write_stats_csv(const std::string& path, std::span<const RunStats> rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << stats_csv_header() << '\n';
  for (const auto& s : rows) out << stats_csv_row(s) << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace soam
