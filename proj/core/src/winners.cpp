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

#include "soam/winners.hpp"

#include "soam/errors.hpp"

namespace soam {

WinnerResult find_winners_exhaustive(const PositionView& units, const Vec3& signal) {
  const std::size_t n = units.size();
  if (n < 2) throw StateError("find_winners: need at least 2 units");
  BestTwo best;
  const Vec3* pos = units.positions.data();
  const UnitId* ids = units.ids.data();
  for (std::size_t i = 0; i < n; ++i) {
    best.offer(squared_distance(pos[i], signal), ids[i]);
  }
  return best.result();
}

}  // namespace soam
