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

#include "soam/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "soam/errors.hpp"
#include "soam/mesh_io.hpp"

namespace soam {

double Rng::normal() {
  while (true) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

namespace {

Bounds bounds_of(const std::vector<Vec3>& pts) {
  Bounds b{pts.front(), pts.front()};
  for (const auto& p : pts) {
    b.min = {std::min(b.min.x, p.x), std::min(b.min.y, p.y), std::min(b.min.z, p.z)};
    b.max = {std::max(b.max.x, p.x), std::max(b.max.y, p.y), std::max(b.max.z, p.z)};
  }
  return b;
}

double face_area(const TriMeshInput& m, const std::array<std::uint32_t, 3>& f) {
  const Vec3& a = m.vertices[f[0]];
  return 0.5 * norm(cross(m.vertices[f[1]] - a, m.vertices[f[2]] - a));
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

SphereSource::SphereSource(const Vec3& center, double radius)
    : center_(center), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !is_finite(center)) {
    throw ArgumentError("sphere: radius must be positive and finite");
  }
}

Vec3 SphereSource::sample(Rng& rng) const {
  while (true) {
    const Vec3 g{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(g);
    if (n > 1e-12) return center_ + g * (radius_ / n);
  }
}

Bounds SphereSource::bounds() const {
  const Vec3 r{radius_, radius_, radius_};
  return {center_ - r, center_ + r};
}

std::string SphereSource::name() const { return "sphere:" + fmt_double(radius_); }

TorusSource::TorusSource(double major_radius, double minor_radius)
    : major_(major_radius), minor_(minor_radius) {
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius) ||
      !std::isfinite(major_radius)) {
    throw ArgumentError("torus: requires R > r > 0");
  }
}

Vec3 TorusSource::sample(Rng& rng) const {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // The area element is proportional to (R + r cos v); accept v with that
  // weight so the result is uniform on the surface.
  while (true) {
    const double u = kTwoPi * rng.uniform();
    const double v = kTwoPi * rng.uniform();
    const double w = rng.uniform() * (major_ + minor_);
    const double ring = major_ + minor_ * std::cos(v);
    if (w < ring) {
      return {ring * std::cos(u), ring * std::sin(u), minor_ * std::sin(v)};
    }
  }
}

Bounds TorusSource::bounds() const {
  const double e = major_ + minor_;
  return {{-e, -e, -minor_}, {e, e, minor_}};
}

std::string TorusSource::name() const {
  return "torus:" + fmt_double(major_) + "," + fmt_double(minor_);
}

std::size_t drop_degenerate_faces(TriMeshInput& mesh) {
  const std::size_t before = mesh.faces.size();
  std::erase_if(mesh.faces, [&](const auto& f) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return true;
    const double area = face_area(mesh, f);
    return !(area > 0.0) || !std::isfinite(area);
  });
  return before - mesh.faces.size();
}

MeshSource::MeshSource(TriMeshInput mesh, std::string label)
    : mesh_(std::move(mesh)), label_(std::move(label)) {
  for (const auto& f : mesh_.faces) {
    for (auto i : f) {
      if (i >= mesh_.vertices.size()) throw ArgumentError("mesh: face index out of range");
    }
  }
  drop_degenerate_faces(mesh_);
  if (mesh_.faces.empty()) throw ArgumentError("mesh: no non-degenerate faces");
  double acc = 0.0;
  cumulative_area_.reserve(mesh_.faces.size());
  for (const auto& f : mesh_.faces) {
    acc += face_area(mesh_, f);
    cumulative_area_.push_back(acc);
  }
  bounds_ = bounds_of(mesh_.vertices);
}

std::size_t MeshSource::pick_face(double u) const {
  const double target = u * cumulative_area_.back();
  auto it = std::upper_bound(cumulative_area_.begin(), cumulative_area_.end(), target);
  if (it == cumulative_area_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_area_.begin());
}

Vec3 MeshSource::sample(Rng& rng) const {
  const auto& f = mesh_.faces[pick_face(rng.uniform())];
  const double s = std::sqrt(rng.uniform());
  const double t = rng.uniform();
  const Vec3& a = mesh_.vertices[f[0]];
  const Vec3& b = mesh_.vertices[f[1]];
  const Vec3& c = mesh_.vertices[f[2]];
  return a * (1.0 - s) + b * (s * (1.0 - t)) + c * (s * t);
}

Bounds MeshSource::bounds() const { return bounds_; }

CloudSource::CloudSource(std::vector<Vec3> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
  if (points_.empty()) throw ArgumentError("cloud: no points");
  for (const auto& p : points_) {
    if (!is_finite(p)) throw ArgumentError("cloud: non-finite point");
  }
  bounds_ = bounds_of(points_);
}

Vec3 CloudSource::sample(Rng& rng) const {
  const auto n = static_cast<double>(points_.size());
  auto i = static_cast<std::size_t>(rng.uniform() * n);
  return points_[std::min(i, points_.size() - 1)];
}

namespace {

std::vector<double> parse_numbers(const std::string& body, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ArgumentError("bad source spec '" + spec + "'");
    }
    if (used != item.size()) throw ArgumentError("bad source spec '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::unique_ptr<SignalSource> make_source(const std::string& spec) {
  if (spec.rfind("sphere:", 0) == 0) {
    auto v = parse_numbers(spec.substr(7), spec);
    if (v.size() != 1) throw ArgumentError("sphere spec needs one radius: " + spec);
    return std::make_unique<SphereSource>(Vec3{}, v[0]);
  }
  if (spec.rfind("torus:", 0) == 0) {
    auto v = parse_numbers(spec.substr(6), spec);
    if (v.size() != 2) throw ArgumentError("torus spec needs R,r: " + spec);
    return std::make_unique<TorusSource>(v[0], v[1]);
  }
  if (ends_with(spec, ".off") || ends_with(spec, ".OFF")) {
    return std::make_unique<MeshSource>(load_off(spec), spec);
  }
  if (ends_with(spec, ".xyz") || ends_with(spec, ".XYZ")) {
    return std::make_unique<CloudSource>(load_xyz(spec), spec);
  }
  throw ArgumentError("unrecognized input '" + spec +
                      "' (expected sphere:R, torus:R,r, *.off or *.xyz)");
}

std::vector<Vec3> sample_points(const SignalSource& source, std::size_t n,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(source.sample(rng));
  return out;
}

}  // namespace soam
