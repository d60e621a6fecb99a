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

#include "cli.hpp"

#include <algorithm>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "soam/errors.hpp"
#include "soam/mesh_io.hpp"
#include "soam/metrics.hpp"
#include "soam/sampling.hpp"
#include "soam/variants.hpp"

namespace soam::cli {

namespace {

struct CommonFlags {
  EngineParams params;
  std::optional<double> cube;
  std::size_t cap = kDefaultBatchCap;
  std::size_t workers = ExecConfig::default_workers();
  std::size_t tile = 1024;

  VariantOptions variant_options() const {
    VariantOptions o;
    o.cube = cube;
    o.cap = cap;
    o.exec.workers = workers;
    o.exec.tile = tile;
    return o;
  }
};

void add_engine_flags(CLI::App& app, CommonFlags& f) {
  auto& p = f.params;
  app.add_option("--eps-b", p.eps_b, "Winner learning rate")->capture_default_str();
  app.add_option("--eps-n", p.eps_n, "Neighbor learning rate")->capture_default_str();
  app.add_option("--theta0", p.theta0, "Initial insertion threshold")->capture_default_str();
  app.add_option("--max-age", p.max_age, "Maximum edge age")->capture_default_str();
  app.add_option("--h-t", p.h_threshold, "Habituation threshold")->capture_default_str();
  app.add_option("--tau-b", p.tau_b, "Winner habituation decay")->capture_default_str();
  app.add_option("--tau-n", p.tau_n, "Neighbor habituation decay")->capture_default_str();
  app.add_option("--rho", p.rho, "Threshold shrink factor")->capture_default_str();
  app.add_option("--ring-patience", p.ring_patience,
                 "Inconsistent wins before a threshold shrink")
      ->capture_default_str();
  app.add_option("--idle-factor", p.idle_factor,
                 "Remove units idle for this many multiples of V updates (0 = off)")
      ->capture_default_str();
  app.add_option("--max-signals", p.max_signals, "Signal cap")->capture_default_str();
  app.add_flag("--allow-boundary", p.allow_boundary,
               "Accept half-disk link rings at convergence");
  app.add_option("--cap", f.cap, "Maximum multi-signal batch size")->capture_default_str();
  app.add_option("--workers", f.workers, "Parallel find lanes")->capture_default_str();
  app.add_option("--tile", f.tile, "Units per scan tile")->capture_default_str();
  app.add_option("--cube", f.cube, "Hash-grid cell edge (default: theta0)");
}

struct InputSpec {
  std::string source;
  std::optional<double> theta0;
};

// "spec@theta0" overrides the insertion threshold for one input.
InputSpec split_input(const std::string& token) {
  const auto at = token.rfind('@');
  if (at == std::string::npos) return {token, std::nullopt};
  InputSpec s{token.substr(0, at), std::nullopt};
  try {
    std::size_t used = 0;
    s.theta0 = std::stod(token.substr(at + 1), &used);
    if (used != token.size() - at - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ArgumentError("bad threshold suffix in '" + token + "'");
  }
  return s;
}

void print_mesh_report(std::ostream& out, const TriMesh& mesh, ManifoldClass cls) {
  const MeshCounts c = count_elements(mesh);
  out << "V=" << c.vertices << " E=" << c.edges << " F=" << c.faces
      << " chi=" << c.euler() << '\n';
  out << to_string(cls);
  if (cls == ManifoldClass::Closed) {
    const std::size_t comps = component_count(mesh);
    if (comps == 1) {
      out << ", genus " << genus(mesh);
    } else {
      out << ", " << comps << " components";
    }
  } else if (cls == ManifoldClass::WithBoundary) {
    out << ", " << mesh.boundary_edge_count << " boundary edges";
  }
  out << '\n';
}

int cmd_reconstruct(const std::string& input, const std::string& variant_name,
                    std::uint64_t seed, const std::string& out_mesh,
                    const std::string& out_stats, const CommonFlags& flags,
                    std::ostream& out, std::ostream& err) {
  const auto variant = parse_variant(variant_name);
  if (!variant) {
    err << "error: unknown variant '" << variant_name
        << "' (expected single, indexed, multi, multi-parallel)\n";
    return kError;
  }
  const InputSpec in = split_input(input);
  EngineParams params = flags.params;
  if (in.theta0) params.theta0 = *in.theta0;
  const auto source = make_source(in.source);
  RunResult r = run_variant(*variant, *source, params, seed, flags.variant_options());
  r.stats.dataset = in.source;

  TriMesh mesh = extract_mesh(r.network);
  const ManifoldClass cls = manifold_check(mesh);
  if (!out_mesh.empty()) save_off(out_mesh, mesh);
  if (!out_stats.empty()) {
    const RunStats rows[] = {r.stats};
    write_stats_csv(out_stats, rows);
  }
  out << to_string(*variant) << ' ' << in.source << " seed=" << seed << ": "
      << (r.stats.converged ? "converged" : "signal cap reached") << " after "
      << r.stats.signals << " signals (" << r.stats.discarded << " discarded), "
      << r.stats.total_s << " s\n";
  print_mesh_report(out, mesh, cls);
  if (r.stats.converged && cls == ManifoldClass::NonManifold) {
    err << "warning: converged network produced a non-manifold mesh\n";
  }
  return r.stats.converged ? kOk : kSignalCap;
}

int cmd_benchmark(const std::vector<std::string>& inputs,
                  const std::vector<std::string>& variant_names,
                  const std::vector<std::uint64_t>& seeds, const std::string& out_csv,
                  const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::vector<Variant> variants;
  for (const auto& name : variant_names) {
    const auto v = parse_variant(name);
    if (!v) {
      err << "error: unknown variant '" << name << "'\n";
      return kError;
    }
    variants.push_back(*v);
  }
  std::vector<RunStats> rows;
  for (const auto& token : inputs) {
    const InputSpec in = split_input(token);
    EngineParams params = flags.params;
    if (in.theta0) params.theta0 = *in.theta0;
    std::unique_ptr<SignalSource> source;
    std::string load_error;
    try {
      source = make_source(in.source);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (Variant v : variants) {
      for (std::uint64_t seed : seeds) {
        RunStats row;
        try {
          if (!source) throw ArgumentError(load_error);
          row = run_variant(v, *source, params, seed, flags.variant_options()).stats;
        } catch (const std::exception& e) {
          row = RunStats{};
          row.variant = to_string(v);
          row.seed = seed;
          err << "error: " << to_string(v) << ' ' << in.source << " seed " << seed
              << ": " << e.what() << '\n';
        }
        row.dataset = in.source;
        out << stats_csv_row(row) << '\n';
        rows.push_back(std::move(row));
      }
    }
  }
  write_stats_csv(out_csv, rows);
  return kOk;
}

int cmd_validate(const std::string& path, bool strict, std::ostream& out) {
  const TriMeshInput in = load_off(path);
  TriMesh mesh;
  mesh.vertices = in.vertices;
  mesh.faces = in.faces;
  const ManifoldClass cls = manifold_check(mesh);
  print_mesh_report(out, mesh, cls);
  switch (cls) {
    case ManifoldClass::Closed:
      return kOk;
    case ManifoldClass::WithBoundary:
      if (strict) return kStrictFailure;
      out << "note: surface has boundary\n";
      return kOk;
    case ManifoldClass::NonManifold:
      return kStrictFailure;
  }
  return kError;
}

int cmd_sample(const std::string& spec, std::size_t n, const std::string& path,
               std::uint64_t seed, std::ostream& out) {
  const auto source = make_source(spec);
  save_xyz(path, sample_points(*source, n, seed));
  out << "wrote " << n << " points to " << path << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface reconstruction with growing self-organizing networks"};
  app.require_subcommand(1);

  CommonFlags rflags;
  std::string r_input, r_variant = "multi", r_mesh, r_stats;
  std::uint64_t r_seed = 1;
  auto* reconstruct = app.add_subcommand("reconstruct", "Run one engine on one input");
  reconstruct->add_option("--input", r_input, "sphere:R, torus:R,r, mesh.off or cloud.xyz")
      ->required();
  reconstruct->add_option("--variant", r_variant, "single|indexed|multi|multi-parallel")
      ->capture_default_str();
  reconstruct->add_option("--seed", r_seed, "RNG seed")->capture_default_str();
  reconstruct->add_option("--out-mesh", r_mesh, "OFF file for the extracted mesh");
  reconstruct->add_option("--out-stats", r_stats, "CSV file for the run statistics");
  add_engine_flags(*reconstruct, rflags);

  CommonFlags bflags;
  std::vector<std::string> b_inputs, b_variants{"single", "indexed", "multi",
                                                "multi-parallel"};
  std::vector<std::uint64_t> b_seeds{1};
  std::string b_csv;
  auto* bench = app.add_subcommand("benchmark", "Run an inputs x variants x seeds matrix");
  bench->add_option("--inputs", b_inputs, "Inputs, optionally suffixed @theta0")
      ->required();
  bench->add_option("--variants", b_variants, "Variants to run")->capture_default_str();
  bench->add_option("--seeds", b_seeds, "Seeds")->capture_default_str();
  bench->add_option("--out-csv", b_csv, "Aggregated CSV")->required();
  add_engine_flags(*bench, bflags);

  std::string v_path;
  bool v_strict = false;
  auto* validate = app.add_subcommand("validate", "Check manifoldness and genus of an OFF mesh");
  validate->add_option("mesh", v_path, "OFF file")->required();
  validate->add_flag("--strict", v_strict, "Fail (exit 3) on surfaces with boundary");

  std::string s_spec, s_path;
  std::size_t s_count = 20000;
  std::uint64_t s_seed = 1;
  auto* sample = app.add_subcommand("sample", "Write points drawn from a source to XYZ");
  sample->add_option("spec", s_spec, "sphere:R, torus:R,r or mesh.off")->required();
  sample->add_option("count", s_count, "Number of points")->required();
  sample->add_option("out", s_path, "XYZ output path")->required();
  sample->add_option("--seed", s_seed, "RNG seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  try {
    if (*reconstruct) {
      return cmd_reconstruct(r_input, r_variant, r_seed, r_mesh, r_stats, rflags, out, err);
    }
    if (*bench) {
      return cmd_benchmark(b_inputs, b_variants, b_seeds, b_csv, bflags, out, err);
    }
    if (*validate) return cmd_validate(v_path, v_strict, out);
    if (*sample) return cmd_sample(s_spec, s_count, s_path, s_seed, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace soam::cli
