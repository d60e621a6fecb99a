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

#include <cmath>
#include <limits>

#include "soam/network.hpp"

namespace soam {

/// Nearest (winner) and second-nearest units for one signal.
struct WinnerResult {
  UnitId winner = kNoUnit;
  UnitId second = kNoUnit;
  double d_winner = 0.0;
  double d_second = 0.0;

  friend bool operator==(const WinnerResult&, const WinnerResult&) = default;
};

/// Running best-two under the total order (squared distance, id). Because
/// the order is total, the result does not depend on visiting order.
struct BestTwo {
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  UnitId i1 = kNoUnit;
  UnitId i2 = kNoUnit;

  void offer(double d, UnitId id) {
    if (d < d1 || (d == d1 && id < i1)) {
      d2 = d1;
      i2 = i1;
      d1 = d;
      i1 = id;
    } else if (d < d2 || (d == d2 && id < i2)) {
      d2 = d;
      i2 = id;
    }
  }

  WinnerResult result() const {
    return {i1, i2, std::sqrt(d1), std::sqrt(d2)};
  }
};

/// Scans every position. Ties go to the lower id.
WinnerResult find_winners_exhaustive(const PositionView& units, const Vec3& signal);

}  // namespace soam
