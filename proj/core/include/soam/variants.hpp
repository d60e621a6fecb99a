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

#include <optional>
#include <string>
#include <string_view>

#include "soam/engine.hpp"
#include "soam/multi_signal.hpp"
#include "soam/parallel_executor.hpp"

namespace soam {

/// The four implementations compared by the benchmark harness.
enum class Variant { Single, Indexed, Multi, MultiParallel };

const char* to_string(Variant v);
/// Accepts "single", "indexed", "multi", "multi-parallel".
std::optional<Variant> parse_variant(std::string_view name);

struct VariantOptions {
  /// Hash-grid cell edge for the indexed variant; defaults to theta0.
  std::optional<double> cube;
  std::size_t cap = kDefaultBatchCap;
  std::size_t floor = kDefaultBatchFloor;
  ExecConfig exec;
  RunControl control;
};

RunResult run_variant(Variant v, const SignalSource& source, const EngineParams& p,
                      std::uint64_t seed, const VariantOptions& opts = {});

}  // namespace soam
