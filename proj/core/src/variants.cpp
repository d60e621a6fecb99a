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

#include "soam/variants.hpp"

namespace soam {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Single:
      return "single";
    case Variant::Indexed:
      return "indexed";
    case Variant::Multi:
      return "multi";
    case Variant::MultiParallel:
      return "multi-parallel";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : {Variant::Single, Variant::Indexed, Variant::Multi,
                    Variant::MultiParallel}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

RunResult run_variant(Variant v, const SignalSource& source, const EngineParams& p,
                      std::uint64_t seed, const VariantOptions& opts) {
  switch (v) {
    case Variant::Single:
      return run_single(source, p, seed, std::nullopt, opts.control);
    case Variant::Indexed:
      return run_single(source, p, seed, opts.cube.value_or(p.theta0), opts.control);
    case Variant::Multi: {
      MultiOptions mo{opts.cap, opts.floor, to_string(v), opts.control};
      return run_multi(source, p, seed, batch_find_winners, mo);
    }
    case Variant::MultiParallel: {
      MultiOptions mo{opts.cap, opts.floor, to_string(v), opts.control};
      ParallelExecutor exec(opts.exec);
      return run_multi(source, p, seed, exec.finder(), mo);
    }
  }
  return {};
}

}  // namespace soam
