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

#include <sstream>

#include "cli.hpp"
#include "soam/mesh_io.hpp"
#include "soam/metrics.hpp"
#include "support.hpp"

namespace soam {
namespace {

using testing::read_lines;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ReconstructWritesMeshAndStats) {
  TempDir dir;
  const auto r = run_cli({"reconstruct", "--input", "sphere:1", "--variant", "multi",
                          "--seed", "7", "--theta0", "0.3", "--out-mesh", dir.file("m.off"),
                          "--out-stats", dir.file("s.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("closed, genus 0"), std::string::npos) << r.out;
  const TriMeshInput m = load_off(dir.file("m.off"));
  TriMesh mesh;
  mesh.vertices = m.vertices;
  mesh.faces = m.faces;
  EXPECT_EQ(genus(mesh), 0);
  const auto csv = read_lines(dir.file("s.csv"));
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[1].rfind("multi,sphere:1,7,", 0), 0u) << csv[1];
}

TEST(Cli, UnknownVariant) {
  const auto r = run_cli({"reconstruct", "--input", "sphere:1", "--variant", "quantum"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("quantum"), std::string::npos);
}

TEST(Cli, SignalCapExitCode) {
  const auto r = run_cli({"reconstruct", "--input", "torus:2,0.5", "--variant", "single",
                          "--max-signals", "10"});
  EXPECT_EQ(r.code, cli::kSignalCap);
  EXPECT_NE(r.out.find("signal cap reached"), std::string::npos);
}

TEST(Cli, BadInputAndUsage) {
  EXPECT_EQ(run_cli({"reconstruct", "--input", "cube:1"}).code, cli::kError);
  EXPECT_EQ(run_cli({"reconstruct", "--input", "sphere:1", "--theta0", "-1"}).code,
            cli::kError);
  EXPECT_EQ(run_cli({}).code, cli::kError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(Cli, BenchmarkMatrix) {
  TempDir dir;
  const auto r = run_cli({"benchmark", "--inputs", "sphere:1@0.5", "torus:2,0.5@0.4",
                          "--variants", "single", "indexed", "multi", "multi-parallel",
                          "--seeds", "1", "2", "3", "--workers", "2", "--out-csv",
                          dir.file("b.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rows = read_lines(dir.file("b.csv"));
  ASSERT_EQ(rows.size(), 25u);
  EXPECT_EQ(rows[0], stats_csv_header());
  EXPECT_EQ(read_lines(dir.write("o.txt", r.out)).size(), 24u);
}

TEST(Cli, BenchmarkKeepsGoingPastBadInputs) {
  TempDir dir;
  const auto r = run_cli({"benchmark", "--inputs", dir.file("missing.off"), "--variants",
                          "single", "--seeds", "1", "--out-csv", dir.file("b.csv")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(read_lines(dir.file("b.csv")).size(), 2u);
}

TEST(Cli, ValidateClosedAndOpen) {
  TempDir dir;
  const auto tet = dir.write("t.off",
                             "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
                             "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n");
  auto r = run_cli({"validate", tet});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("closed, genus 0"), std::string::npos) << r.out;

  const auto fan = dir.write("f.off",
                             "OFF\n4 2 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n");
  r = run_cli({"validate", fan});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("note: surface has boundary"), std::string::npos);
  EXPECT_EQ(run_cli({"validate", "--strict", fan}).code, cli::kStrictFailure);

  const auto fin = dir.write("n.off",
                             "OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n"
                             "3 0 1 2\n3 0 1 3\n3 0 1 4\n");
  EXPECT_EQ(run_cli({"validate", fin}).code, cli::kStrictFailure);
  EXPECT_EQ(run_cli({"validate", dir.file("none.off")}).code, cli::kError);
}

TEST(Cli, SampleWritesPoints) {
  TempDir dir;
  const auto r = run_cli({"sample", "torus:2,0.5", "20000", dir.file("p.xyz")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto pts = load_xyz(dir.file("p.xyz"));
  ASSERT_EQ(pts.size(), 20000u);
  for (const auto& p : pts) {
    const double q = std::hypot(p.x, p.y) - 2.0;
    ASSERT_NEAR(q * q + p.z * p.z, 0.25, 1e-9);
  }
}

TEST(Cli, SameCommandSameOutput) {
  TempDir dir;
  for (const char* name : {"a", "b"}) {
    const std::string d = name;
    ASSERT_EQ(run_cli({"reconstruct", "--input", "sphere:1", "--variant", "indexed", "--seed",
                       "3", "--theta0", "0.4", "--out-mesh", dir.file(d + ".off")})
                  .code,
              cli::kOk);
    ASSERT_EQ(run_cli({"sample", "sphere:1", "500", dir.file(d + ".xyz"), "--seed", "5"}).code,
              cli::kOk);
  }
  EXPECT_EQ(read_lines(dir.file("a.off")), read_lines(dir.file("b.off")));
  EXPECT_EQ(read_lines(dir.file("a.xyz")), read_lines(dir.file("b.xyz")));
}

}  // namespace
}  // namespace soam
