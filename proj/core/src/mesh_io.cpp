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

#include "soam/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "soam/errors.hpp"
#include "soam/metrics.hpp"

namespace soam {

namespace {

/// Line reader that skips blank lines and '#' comments and tracks line
/// numbers for error messages.
class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open '" + path + "' for reading");
  }

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_, line_no_, what);
  }
  [[noreturn]] void fail_eof(const std::string& what) const {
    throw ParseError(path_, 0, what + " (unexpected end of file)");
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

template <typename... T>
bool read_exact(const std::string& line, T&... out) {
  std::istringstream is(line);
  (is >> ... >> out);
  if (!is) return false;
  std::string rest;
  return !(is >> rest);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Faces>
void write_off(const std::string& path, const std::vector<Vec3>& vertices,
               const Faces& faces) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "OFF\n" << vertices.size() << ' ' << faces.size() << " 0\n";
  for (const auto& v : vertices) {
    out << fmt(v.x) << ' ' << fmt(v.y) << ' ' << fmt(v.z) << '\n';
  }
  for (const auto& f : faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace

TriMeshInput load_off(const std::string& path) {
  LineReader r(path);
  std::string line;
  if (!r.next(line)) r.fail_eof("missing OFF header");
  {
    std::istringstream is(line);
    std::string magic;
    is >> magic;
    if (magic != "OFF") r.fail("expected 'OFF' header");
    // Counts may share the header line.
    std::string rest;
    std::getline(is, rest);
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      line = rest;
    } else if (!r.next(line)) {
      r.fail_eof("missing counts line");
    }
  }
  long nv = 0;
  long nf = 0;
  long ne = 0;
  if (!read_exact(line, nv, nf, ne) && !read_exact(line, nv, nf)) {
    r.fail("malformed counts line");
  }
  if (nv < 0 || nf < 0) r.fail("negative element count");

  TriMeshInput mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!r.next(line)) r.fail_eof("missing vertex");
    Vec3 v;
    std::istringstream is(line);
    if (!(is >> v.x >> v.y >> v.z)) r.fail("malformed vertex");
    if (!is_finite(v)) r.fail("non-finite vertex");
    mesh.vertices.push_back(v);
  }
  mesh.faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!r.next(line)) r.fail_eof("missing face");
    std::istringstream is(line);
    long n = 0;
    long a = 0;
    long b = 0;
    long c = 0;
    if (!(is >> n)) r.fail("malformed face");
    if (n != 3) r.fail("only triangular faces are supported");
    if (!(is >> a >> b >> c)) r.fail("malformed face");
    for (long idx : {a, b, c}) {
      if (idx < 0 || idx >= nv) r.fail("face index " + std::to_string(idx) + " out of range");
    }
    mesh.faces.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                          static_cast<std::uint32_t>(c)});
  }
  drop_degenerate_faces(mesh);
  return mesh;
}

std::vector<Vec3> load_xyz(const std::string& path) {
  LineReader r(path);
  std::vector<Vec3> pts;
  std::string line;
  while (r.next(line)) {
    Vec3 v;
    std::istringstream is(line);
    if (!(is >> v.x >> v.y >> v.z)) r.fail("expected 'x y z'");
    if (!is_finite(v)) r.fail("non-finite coordinate");
    pts.push_back(v);
  }
  return pts;
}

void save_off(const std::string& path, const TriMesh& mesh) {
  write_off(path, mesh.vertices, mesh.faces);
}

void save_off(const std::string& path, const TriMeshInput& mesh) {
  write_off(path, mesh.vertices, mesh.faces);
}

void save_xyz(const std::string& path, const std::vector<Vec3>& points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& p : points) out << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace soam
