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
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vqclab/circuit.hpp"

namespace vqclab {

using Edge = std::pair<Qubit, Qubit>;

/**
 * Target device: physical register, undirected coupling graph and native
 * gate sets. Edges are stored with first < second. The constructor rejects
 * self-loops, out-of-range endpoints and disconnected graphs.
 */
class BackendModel {
 public:
  BackendModel(std::size_t num_physical, const std::vector<Edge>& edges,
               std::set<GateKind> native_1q = default_native_1q(),
               std::set<GateKind> native_2q = default_native_2q());

  static std::set<GateKind> default_native_1q() {
    return {GateKind::RZ, GateKind::SX, GateKind::X};
  }
  static std::set<GateKind> default_native_2q() { return {GateKind::CX}; }

  std::size_t num_physical() const { return num_physical_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::set<GateKind>& native_1q() const { return native_1q_; }
  const std::set<GateKind>& native_2q() const { return native_2q_; }

  bool coupled(Qubit a, Qubit b) const;
  bool is_native(GateKind kind) const;
  /// Ascending neighbor list.
  const std::vector<Qubit>& neighbors(Qubit q) const { return adjacency_[q]; }
  std::size_t degree(Qubit q) const { return adjacency_[q].size(); }

  bool operator==(const BackendModel& other) const {
    return num_physical_ == other.num_physical_ && edges_ == other.edges_ &&
           native_1q_ == other.native_1q_ && native_2q_ == other.native_2q_;
  }

 private:
  std::size_t num_physical_;
  std::set<Edge> edges_;
  std::set<GateKind> native_1q_;
  std::set<GateKind> native_2q_;
  std::vector<std::vector<Qubit>> adjacency_;
};

BackendModel make_line(std::size_t n);

/// Heavy-hex-style lattice: `rows` chains of `cols` qubits (index r*cols+c),
/// joined between rows r and r+1 by one bridge qubit at every column with
/// c % 4 == 2*(r % 2). Bridges are numbered after all row qubits in (r, c)
/// order. Requires rows >= 2, cols >= 3, cols % 4 == 3.
BackendModel make_heavy_hex(std::size_t rows, std::size_t cols);

/// JSON: {"num_physical": n, "edges": [[a,b],...], "native_1q": [...],
/// "native_2q": [...]}.
std::string backend_to_json(const BackendModel& model);
BackendModel backend_from_json(std::string_view text);
BackendModel load_backend(const std::filesystem::path& path);
void save_backend(const BackendModel& model, const std::filesystem::path& path);

/// Resolves a CLI backend reference: "line:n", "heavy-hex:R,C" or a JSON
/// file path.
BackendModel resolve_backend(std::string_view spec);

inline constexpr std::string_view kDefaultBackend = "heavy-hex:5,11";

}  // namespace vqclab
