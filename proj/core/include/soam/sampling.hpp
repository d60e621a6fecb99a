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
#include <memory>
#include <string>
#include <vector>

#include "soam/rng.hpp"
#include "soam/vec3.hpp"

namespace soam {

/// Axis-parallel box containing the support of a signal source.
struct Bounds {
  Vec3 min;
  Vec3 max;
};

/// Draws input signals from a fixed distribution. Implementations are
/// stateless; all randomness comes from the caller's generator, so the same
/// seeded generator replays the same sequence.
class SignalSource {
 public:
  virtual ~SignalSource() = default;
  virtual Vec3 sample(Rng& rng) const = 0;
  virtual Bounds bounds() const = 0;
  virtual std::string name() const = 0;
};

class SphereSource final : public SignalSource {
 public:
  SphereSource(const Vec3& center, double radius);
  Vec3 sample(Rng& rng) const override;
  Bounds bounds() const override;
  std::string name() const override;

 private:
  Vec3 center_;
  double radius_;
};

/// Torus around the z axis: major radius R (tube center circle), minor
/// radius r (tube radius). Area-uniform.
class TorusSource final : public SignalSource {
 public:
  TorusSource(double major_radius, double minor_radius);
  Vec3 sample(Rng& rng) const override;
  Bounds bounds() const override;
  std::string name() const override;

 private:
  double major_;
  double minor_;
};

struct TriMeshInput {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
};

/// Removes faces with a repeated index or (numerically) zero area. Returns
/// the number of faces dropped.
std::size_t drop_degenerate_faces(TriMeshInput& mesh);

/// Area-weighted face choice followed by a uniform barycentric point.
class MeshSource final : public SignalSource {
 public:
  explicit MeshSource(TriMeshInput mesh, std::string label = "mesh");
  Vec3 sample(Rng& rng) const override;
  Bounds bounds() const override;
  std::string name() const override { return label_; }

  const TriMeshInput& mesh() const { return mesh_; }
  /// Index of the face a draw selects for uniform variate u in [0,1).
  std::size_t pick_face(double u) const;

 private:
  TriMeshInput mesh_;
  std::vector<double> cumulative_area_;
  Bounds bounds_;
  std::string label_;
};

/// Uniform choice among the points of a stored cloud.
class CloudSource final : public SignalSource {
 public:
  explicit CloudSource(std::vector<Vec3> points, std::string label = "cloud");
  Vec3 sample(Rng& rng) const override;
  Bounds bounds() const override { return bounds_; }
  std::string name() const override { return label_; }

 private:
  std::vector<Vec3> points_;
  Bounds bounds_;
  std::string label_;
};

/// Builds a source from "sphere:R", "torus:R,r", or a path ending in .off
/// (mesh) or .xyz (point cloud).
std::unique_ptr<SignalSource> make_source(const std::string& spec);

/// Draws `n` signals from a fresh generator seeded with `seed`.
std::vector<Vec3> sample_points(const SignalSource& source, std::size_t n,
                                std::uint64_t seed);

}  // namespace soam
