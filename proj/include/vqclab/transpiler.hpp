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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vqclab/backend.hpp"
#include "vqclab/circuit.hpp"

namespace vqclab {

/// layout[logical] = physical. Injective.
using Layout = std::vector<Qubit>;

/// Physical angle tied to a logical symbol: coeff * theta[symbol] + offset.
struct FromLogical {
  SymbolId symbol;
  int coeff;
  double offset;
  bool operator==(const FromLogical&) const = default;
};

/// Physical angle that was a constant after compilation.
struct Synthesized {
  double value;
  bool operator==(const Synthesized&) const = default;
};

using ParamOrigin = std::variant<FromLogical, Synthesized>;

/// provenance[physical symbol] = origin of that angle.
using ParamProvenance = std::vector<ParamOrigin>;

struct TranspiledCircuit {
  /// Register is the full backend; symbol k is the k-th rotation in gate
  /// order, each appearing once as Affine(k, +1, 0).
  Circuit physical;
  Layout initial_layout;
  Layout final_layout;
  ParamProvenance provenance;
  StructuralMetrics metrics_before;
  StructuralMetrics metrics_after;
  std::vector<Edge> swaps;  // routing SWAPs in insertion order

  bool operator==(const TranspiledCircuit&) const = default;
};

struct TranspileOptions {
  bool optimize = true;
  /// Unset: trivial layout. Set: seeded random injective layout.
  std::optional<std::uint64_t> layout_seed;
};

/// Trivial layout i -> i, or a seeded random placement. Throws
/// std::invalid_argument("circuit does not fit backend").
Layout choose_layout(const Circuit& circuit, const BackendModel& backend,
                     std::optional<std::uint64_t> seed = std::nullopt);

struct RoutingResult {
  Circuit circuit;  // over the backend register, SWAPs included
  Layout final_layout;
  std::vector<Edge> swaps;
};

/**
 * Shortest-path SWAP routing. Gates are processed in order; a 2-qubit gate
 * whose operands sit on non-adjacent physical qubits p, q is preceded by
 * SWAPs walking p's occupant along the BFS path towards q (smaller-index
 * neighbors are discovered first), then emitted on (v_{k-1}, q).
 */
RoutingResult route(const Circuit& circuit, const BackendModel& backend,
                    const Layout& layout);

/// SWAP -> 3 CX; non-native 1-qubit gates through the ZSX Euler template
/// [RZ(lam), SX, RZ(theta+pi), SX, RZ(phi+pi)] with RZ(0) factors dropped.
/// Throws std::invalid_argument on a gate the backend cannot express.
Circuit decompose_to_native(const Circuit& circuit, const BackendModel& backend);

/// Peephole passes to a fixpoint: RZ merging, RZ(0) removal, CX-pair and
/// SX^4 cancellation. Never increases the gate count.
Circuit optimize(const Circuit& circuit);

TranspiledCircuit transpile(const Circuit& logical, const BackendModel& backend,
                            const TranspileOptions& options = {});

/// Empty when `circuit` only uses native kinds on coupled pairs.
std::vector<std::string> constraint_violations(const Circuit& circuit,
                                               const BackendModel& backend);

/// Physical angles for logical parameters `theta`, through the provenance.
std::vector<double> bind_provenance(const ParamProvenance& provenance,
                                    std::span<const double> theta);

/// Layout after applying `swaps` (physical transpositions) to `initial`.
Layout apply_swaps(const Layout& initial, std::span<const Edge> swaps,
                   std::size_t num_physical);

struct OverheadReport {
  std::int64_t delta_g1q = 0;
  std::int64_t delta_g2q = 0;
  std::int64_t delta_depth_dag = 0;
  /// Physical DAG depth minus the repetition count.
  std::int64_t delta_depth_paper = 0;
};

OverheadReport overhead(const Circuit& logical, const TranspiledCircuit& t,
                        std::size_t reps);

/**
 * The qubits a physical circuit actually touches (plus the initial layout
 * image), renumbered densely in ascending physical order so the circuit can
 * be simulated without allocating the whole backend register.
 */
struct CompactCircuit {
  Circuit circuit;
  std::vector<Qubit> physical_of;  // compact index -> physical qubit

  Qubit compact_index(Qubit physical) const;
};

CompactCircuit compact(const Circuit& physical, const Layout& initial_layout);

std::string provenance_to_json(const ParamProvenance& provenance);
ParamProvenance provenance_from_json(std::string_view text);

}  // namespace vqclab
