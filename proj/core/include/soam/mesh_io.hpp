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

#include <string>
#include <vector>

#include "soam/sampling.hpp"
#include "soam/vec3.hpp"

namespace soam {

struct TriMesh;

/// Reads an ascii OFF triangle mesh. Faces must be triangles ("3 i j k").
/// Degenerate faces are dropped after parsing.
TriMeshInput load_off(const std::string& path);

/// Reads "x y z" lines; blank lines and '#' comments are skipped.
std::vector<Vec3> load_xyz(const std::string& path);

/// Writes coordinates with 17 significant digits so a reload is exact.
void save_off(const std::string& path, const TriMesh& mesh);
void save_off(const std::string& path, const TriMeshInput& mesh);
void save_xyz(const std::string& path, const std::vector<Vec3>& points);

}  // namespace soam
