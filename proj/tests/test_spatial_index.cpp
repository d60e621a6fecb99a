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

#include <limits>

#include "soam/engine.hpp"
#include "soam/errors.hpp"
#include "soam/sampling.hpp"
#include "soam/spatial_index.hpp"
#include "support.hpp"

namespace soam {
namespace {

using testing::random_point;

const Vec3 kMin{-1, -1, -1};
const Vec3 kMax{1, 1, 1};

TEST(HashGridCells, CornerAndOffsets) {
  const HashGrid g(kMin, kMax, 0.25);
  EXPECT_EQ(g.cell_of(kMin), (CellIndex{0, 0, 0}));
  EXPECT_EQ(g.cell_of(kMin + Vec3{1.5 * 0.25, 0, 0}), (CellIndex{1, 0, 0}));
  EXPECT_EQ(g.extents(), (std::array<int, 3>{8, 8, 8}));
}

TEST(HashGridCells, OutsideIsClamped) {
  const HashGrid g(kMin, kMax, 0.25);
  EXPECT_EQ(g.cell_of({-50, 0.1, 50}), (CellIndex{0, 4, 7}));
  EXPECT_EQ(g.cell_of(kMax), (CellIndex{7, 7, 7}));
}

TEST(HashGridCells, BadConstruction) {
  EXPECT_THROW(HashGrid(kMin, kMax, 0.0), ArgumentError);
  EXPECT_THROW(HashGrid(kMax, kMin, 0.5), ArgumentError);
}

TEST(HashGridMembership, InsertRemoveRelocate) {
  HashGrid g(kMin, kMax, 0.5);
  g.insert(3, {0.1, 0.1, 0.1});
  EXPECT_TRUE(g.contains(3));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_THROW(g.insert(3, {0, 0, 0}), ArgumentError);

  const CellIndex home = g.cell_of({0.1, 0.1, 0.1});
  g.relocate(3, {0.2, 0.2, 0.2});  // same cell
  ASSERT_NE(g.cell_members(home), nullptr);
  EXPECT_EQ(*g.cell_members(home), (std::vector<UnitId>{3}));

  g.relocate(3, {-0.9, 0.2, 0.2});
  EXPECT_EQ(g.cell_members(home), nullptr);
  const auto* moved = g.cell_members(g.cell_of({-0.9, 0.2, 0.2}));
  ASSERT_NE(moved, nullptr);
  EXPECT_EQ(*moved, (std::vector<UnitId>{3}));

  g.remove(3);
  EXPECT_EQ(g.size(), 0u);
  EXPECT_FALSE(g.contains(3));
  EXPECT_THROW(g.remove(3), NotFoundError);
  EXPECT_THROW(g.relocate(3, {0, 0, 0}), NotFoundError);
}

TEST(HashGridQuery, SingleCellBlockIsExact) {
  Rng rng(4);
  Network net;
  for (int i = 0; i < 30; ++i) net.add_unit(random_point(rng, -0.2, 0.2), 0.3);
  HashGrid g(kMin, kMax, 1.0);
  g.index_all(net);
  for (int q = 0; q < 200; ++q) {
    const Vec3 s = random_point(rng, -0.3, 0.3);
    EXPECT_EQ(g.query_winners(net.view(), s), find_winners_exhaustive(net.view(), s));
  }
}

TEST(HashGridQuery, InfiniteCubeIsExhaustive) {
  Rng rng(5);
  Network net;
  for (int i = 0; i < 300; ++i) net.add_unit(random_point(rng), 0.3);
  HashGrid g(kMin, kMax, std::numeric_limits<double>::infinity());
  g.index_all(net);
  for (int q = 0; q < 500; ++q) {
    const Vec3 s = random_point(rng, -3, 3);
    ASSERT_EQ(g.query_winners(net.view(), s), find_winners_exhaustive(net.view(), s));
  }
}

TEST(HashGridQuery, SparseBlockFallsBack) {
  Network net;
  net.add_unit({-0.95, -0.95, -0.95}, 0.3);
  net.add_unit({0.95, 0.95, 0.95}, 0.3);
  net.add_unit({0.9, 0.95, 0.95}, 0.3);
  HashGrid g(kMin, kMax, 0.1);
  g.index_all(net);
  // One candidate near the first corner: the block holds fewer than two.
  const Vec3 s{-0.9, -0.9, -0.9};
  EXPECT_EQ(g.query_winners(net.view(), s), find_winners_exhaustive(net.view(), s));
  // Empty block.
  const Vec3 t{0, 0, 0};
  EXPECT_EQ(g.query_winners(net.view(), t), find_winners_exhaustive(net.view(), t));
}

TEST(HashGridQuery, NeedsTwoUnits) {
  Network net;
  net.add_unit({0, 0, 0}, 0.3);
  HashGrid g(kMin, kMax, 0.5);
  g.index_all(net);
  EXPECT_THROW(g.query_winners(net.view(), {0, 0, 0}), StateError);
}

TEST(HashGridObserver, TracksEngineUpdates) {
  const TorusSource src(2.0, 0.5);
  const Bounds bb = src.bounds();
  EngineParams p;
  p.theta0 = 0.3;
  Rng rng(6);
  Network net;
  HashGrid g(bb.min, bb.max, p.theta0);
  net.add_observer(&g);
  net.add_unit(src.sample(rng), p.theta0);
  net.add_unit(src.sample(rng), p.theta0);
  for (int i = 0; i < 20000; ++i) {
    const Vec3 s = src.sample(rng);
    update_single(net, s, g.query_winners(net.view(), s), p);
    if (i % 500 == 0) ASSERT_NO_THROW(g.audit(net)) << i;
  }
  g.audit(net);
  EXPECT_EQ(g.size(), net.unit_count());
  net.remove_observer(&g);
}

TEST(HashGridQuery, AgreementWithExhaustiveOnConvergedNetworks) {
  const SphereSource src({0, 0, 0}, 1.0);
  EngineParams p;
  p.theta0 = 0.3;
  const RunResult r = run_single(src, p, 3);
  ASSERT_TRUE(r.stats.converged);
  const Bounds bb = src.bounds();
  HashGrid g(bb.min, bb.max, p.theta0);
  g.index_all(r.network);
  g.audit(r.network);
  Rng rng(99);
  int agree = 0;
  const int n = 1000;
  for (int q = 0; q < n; ++q) {
    const Vec3 s = src.sample(rng);
    agree += g.query_winners(r.network.view(), s) == find_winners_exhaustive(r.network.view(), s);
  }
  EXPECT_GE(agree, 990);
}

}  // namespace
}  // namespace soam
