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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vqclab/ansatz.hpp"
#include "vqclab/backend.hpp"
#include "vqclab/circuit.hpp"
#include "vqclab/grad.hpp"

namespace vqclab {

/// Sweep over (ansatz, n, L) cells. Defaults are the standard experiment
/// grid: all three families, n in {2..10 step 2}, L in {1,2,4,6,8,10},
/// 200 samples, heavy-hex(5, 11).
struct SweepConfig {
  std::vector<AnsatzKind> ansatze{AnsatzKind::EfficientSU2, AnsatzKind::TTN,
                                  AnsatzKind::RealAmplitudes};
  std::vector<std::size_t> qubits{2, 4, 6, 8, 10};
  std::vector<std::size_t> reps{1, 2, 4, 6, 8, 10};
  std::size_t samples = 200;
  std::uint64_t base_seed = 0;
  std::string backend{kDefaultBackend};
  ReparamMode mode = ReparamMode::AllAngles;
  GradientEngine engine = GradientEngine::Adjoint;
  /// Independent PRNG seeds per cell; >1 reports mean and stderr over seeds.
  std::size_t meta_seeds = 1;
  std::string out_csv;
  std::string out_dir;
  /// JSON-lines checkpoint; completed cells found there are not recomputed.
  std::string checkpoint;
  /// 0 = default_thread_count().
  std::size_t threads = 0;

  /// Throws std::invalid_argument on empty lists, n < 2, L < 1, samples < 2
  /// or meta_seeds < 1.
  void validate() const;
};

SweepConfig sweep_config_from_json(std::string_view text);
std::string sweep_config_to_json(const SweepConfig& config);

struct SweepRecord {
  AnsatzKind ansatz = AnsatzKind::EfficientSU2;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t p_log = 0;
  std::size_t p_phys = 0;
  StructuralMetrics log;
  StructuralMetrics phys;
  std::int64_t delta_g1q = 0;
  std::int64_t delta_g2q = 0;
  std::int64_t delta_depth_dag = 0;
  std::int64_t delta_depth_paper = 0;
  double gradvar_log = 0.0;
  double gradvar_phys = 0.0;
  double delta_gradvar = 0.0;
  double stderr_log = 0.0;
  double stderr_phys = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; not part of the CSV
  std::size_t swaps = 0;
  std::string error;       // empty on success

  bool ok() const { return error.empty(); }
};

/// Seed of the cell at `cell_index` (ansatz-major, then n, then L).
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t cell_index);

/// Builds, transpiles and measures one cell. Failures are captured in
/// SweepRecord::error rather than thrown.
SweepRecord run_cell(AnsatzKind ansatz, std::size_t n, std::size_t reps,
                     std::uint64_t seed, const SweepConfig& config,
                     const BackendModel& backend);

using ProgressFn = std::function<void(const SweepRecord&)>;

/// All cells in canonical order. Parallel over cells; results are
/// independent of the worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                   const ProgressFn& progress = {});

inline constexpr std::string_view kCsvHeader =
    "ansatz,n,reps,P_log,P_phys,g1q_log,g1q_phys,g2q_log,g2q_phys,depth_log,"
    "depth_phys,delta_g1q,delta_g2q,delta_depth_dag,delta_depth_paper,"
    "gradvar_log,gradvar_phys,delta_gradvar,stderr_log,stderr_phys,seed";

/// Header plus one row per successful record; floats use 9 significant
/// digits.
std::string records_to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_csv(std::string_view text);
void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path);

/// Delta-GradVar heatmap for one ansatz: reps on x, qubits on y, diverging
/// scale symmetric about zero. Throws std::invalid_argument listing missing
/// cells when the (n x L) grid is incomplete.
std::string heatmap_svg(const std::vector<SweepRecord>& records,
                        AnsatzKind ansatz);
void emit_heatmap_svg(const std::vector<SweepRecord>& records,
                      AnsatzKind ansatz, const std::filesystem::path& path);

std::string record_to_json_line(const SweepRecord& record,
                                const SweepConfig& config);

}  // namespace vqclab
