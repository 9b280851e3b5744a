// Copyright 2026 The vqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vqclab/ansatz.hpp"
#include "vqclab/backend.hpp"
#include "vqclab/circuit_io.hpp"
#include "vqclab/grad.hpp"
#include "vqclab/harness.hpp"
#include "vqclab/statevector.hpp"
#include "vqclab/transpiler.hpp"

namespace {

using namespace vqclab;
using nlohmann::ordered_json;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// JSON array or whitespace/comma separated floats.
std::vector<double> read_theta(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    return nlohmann::json::parse(text).get<std::vector<double>>();
  }
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> theta;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    theta.push_back(std::stod(token, &used));
    if (used != token.size()) throw std::invalid_argument("bad angle '" + token + "'");
  }
  return theta;
}

ordered_json metrics_json(const StructuralMetrics& m) {
  return {{"g1q", m.g1q}, {"g2q", m.g2q}, {"depth", m.dag_depth},
          {"symbols", m.num_symbols}};
}

struct BuildArgs {
  std::string ansatz;
  std::size_t qubits = 0;
  std::size_t reps = 0;
  std::string out;
};

int run_build(const BuildArgs& a) {
  const Circuit c = build_ansatz(parse_ansatz_kind(a.ansatz), a.qubits, a.reps);
  if (a.out.empty() || a.out == "-") {
    std::cout << to_text(c);
  } else {
    write_circuit(c, a.out);
  }
  return 0;
}

struct TranspileArgs {
  std::string in;
  std::string backend{kDefaultBackend};
  std::string out;
  std::string provenance;
  std::optional<std::uint64_t> layout_seed;
  bool no_optimize = false;
};

int run_transpile(const TranspileArgs& a) {
  const Circuit logical = read_circuit(a.in);
  const BackendModel backend = resolve_backend(a.backend);
  TranspileOptions opts;
  opts.optimize = !a.no_optimize;
  opts.layout_seed = a.layout_seed;
  const TranspiledCircuit t = transpile(logical, backend, opts);
  write_circuit(t.physical, a.out);
  if (!a.provenance.empty()) spit(a.provenance, provenance_to_json(t.provenance));

  ordered_json summary;
  summary["initial_layout"] = t.initial_layout;
  summary["final_layout"] = t.final_layout;
  summary["cost_qubit"] = t.final_layout.at(0);
  summary["swaps"] = t.swaps.size();
  summary["logical"] = metrics_json(t.metrics_before);
  summary["physical"] = metrics_json(t.metrics_after);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct ExpectArgs {
  std::string in;
  std::string theta;
  Qubit qubit = 0;
};

int run_expect(const ExpectArgs& a) {
  const Circuit c = read_circuit(a.in);
  std::vector<double> theta;
  if (!a.theta.empty()) theta = read_theta(a.theta);
  const CompactCircuit active = compact(c, {a.qubit});
  const StateVector psi = simulate(active.circuit, theta);
  std::printf("%.17g\n", psi.expect_z(active.compact_index(a.qubit)));
  return 0;
}

struct GradvarArgs {
  std::string in;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::string mode{"all-angles"};
  Qubit cost_qubit = 0;
  std::string provenance;
  std::string engine{"adjoint"};
  std::size_t threads = 0;
};

int run_gradvar(const GradvarArgs& a) {
  Circuit c = read_circuit(a.in);
  const ReparamMode mode = parse_reparam_mode(a.mode);
  if (mode == ReparamMode::SymbolDerived) {
    if (a.provenance.empty()) {
      throw std::invalid_argument("--mode symbol-derived requires --provenance");
    }
    c = apply_reparam_mode(c, provenance_from_json(slurp(a.provenance)), mode);
  }
  const CompactCircuit active = compact(c, {a.cost_qubit});

  GradVarianceOptions opts;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.cost_qubit = active.compact_index(a.cost_qubit);
  opts.engine = parse_gradient_engine(a.engine);
  opts.threads = a.threads;
  const GradStats stats = grad_variance(active.circuit, opts);
  if (stats.no_parameters) std::cerr << "warning: circuit has no parameters\n";
  std::cout << grad_stats_to_json(stats);
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string out_csv;
  std::string out_dir;
  std::string checkpoint;
  std::size_t threads = 0;
  std::size_t meta_seeds = 0;
  bool quiet = false;
};

int run_sweep_cmd(const SweepArgs& a) {
  SweepConfig config;
  if (!a.config.empty()) config = sweep_config_from_json(slurp(a.config));
  if (!a.out_csv.empty()) config.out_csv = a.out_csv;
  if (!a.out_dir.empty()) config.out_dir = a.out_dir;
  if (!a.checkpoint.empty()) config.checkpoint = a.checkpoint;
  if (a.threads != 0) config.threads = a.threads;
  if (a.meta_seeds != 0) config.meta_seeds = a.meta_seeds;
  config.validate();
  if (config.out_csv.empty() && config.out_dir.empty()) {
    throw std::invalid_argument("sweep needs --out-csv or --out-dir");
  }

  ProgressFn progress;
  if (!a.quiet) {
    progress = [](const SweepRecord& r) {
      std::fprintf(stderr, "%-16s n=%-3zu L=%-3zu %s (%.1fs)\n",
                   std::string(to_string(r.ansatz)).c_str(), r.n, r.reps,
                   r.ok() ? "ok" : r.error.c_str(), r.wall_time);
    };
  }
  const auto records = run_sweep(config, progress);

  std::size_t failed = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "error: " << to_string(r.ansatz) << " n=" << r.n
                << " L=" << r.reps << ": " << r.error << "\n";
    }
  }
  if (!config.out_csv.empty()) emit_csv(records, config.out_csv);
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    for (auto kind : config.ansatze) {
      const auto path = std::filesystem::path(config.out_dir) /
                        ("heatmap_" + std::string(to_string(kind)) + ".svg");
      try {
        emit_heatmap_svg(records, kind, path);
      } catch (const std::invalid_argument& e) {
        std::cerr << "skipping " << path.string() << ": " << e.what() << "\n";
      }
    }
  }
  return failed == 0 ? 0 : 2;
}

struct BackendArgs {
  std::string spec{kDefaultBackend};
  std::string out;
};

int run_backend(const BackendArgs& a) {
  const BackendModel b = resolve_backend(a.spec);
  if (a.out.empty() || a.out == "-") {
    std::cout << backend_to_json(b);
  } else {
    save_backend(b, a.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vqclab: transpilation effects on variational circuit gradients"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Emit an ansatz circuit in text form");
  b->add_option("--ansatz", build.ansatz, "efficient_su2 | ttn | real_amplitudes")->required();
  b->add_option("--qubits", build.qubits)->required();
  b->add_option("--reps", build.reps)->required();
  b->add_option("--out", build.out, "Output file ('-' for stdout)");

  TranspileArgs tr;
  auto* t = app.add_subcommand("transpile", "Map a circuit onto a backend");
  t->add_option("--in", tr.in)->required();
  t->add_option("--backend", tr.backend, "JSON path, line:n or heavy-hex:R,C");
  t->add_option("--out", tr.out)->required();
  t->add_option("--provenance", tr.provenance, "Write parameter provenance JSON");
  t->add_option("--layout-seed", tr.layout_seed, "Seeded random initial layout");
  t->add_flag("--no-optimize", tr.no_optimize);

  ExpectArgs ex;
  auto* e = app.add_subcommand("expect", "Print <Z> of one qubit");
  e->add_option("--in", ex.in)->required();
  e->add_option("--theta", ex.theta, "Angles: JSON array or whitespace separated");
  e->add_option("--qubit", ex.qubit);

  GradvarArgs gv;
  auto* g = app.add_subcommand("gradvar", "Gradient variance statistics as JSON");
  g->add_option("--in", gv.in)->required();
  g->add_option("--samples", gv.samples);
  g->add_option("--seed", gv.seed);
  g->add_option("--mode", gv.mode, "all-angles | symbol-derived");
  g->add_option("--cost-qubit", gv.cost_qubit);
  g->add_option("--provenance", gv.provenance, "Needed for symbol-derived");
  g->add_option("--engine", gv.engine, "adjoint | shift");
  g->add_option("--threads", gv.threads, "0 = VQCLAB_THREADS or all cores");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Run an (ansatz, n, L) sweep");
  s->add_option("--config", sw.config, "SweepConfig JSON (defaults if omitted)");
  s->add_option("--out-csv", sw.out_csv);
  s->add_option("--out-dir", sw.out_dir, "Directory for heatmap_<ansatz>.svg");
  s->add_option("--checkpoint", sw.checkpoint, "JSON-lines checkpoint file");
  s->add_option("--threads", sw.threads);
  s->add_option("--meta-seeds", sw.meta_seeds, "Seeds per cell; reports mean and stderr");
  s->add_flag("--quiet", sw.quiet);

  BackendArgs bk;
  auto* k = app.add_subcommand("backend", "Write a backend JSON file");
  k->add_option("--spec", bk.spec, "line:n or heavy-hex:R,C");
  k->add_option("--out", bk.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*b) return run_build(build);
    if (*t) return run_transpile(tr);
    if (*e) return run_expect(ex);
    if (*g) return run_gradvar(gv);
    if (*s) return run_sweep_cmd(sw);
    if (*k) return run_backend(bk);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
