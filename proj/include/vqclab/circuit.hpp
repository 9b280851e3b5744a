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

#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqclab {

using Qubit = std::size_t;
using SymbolId = std::size_t;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi). Values within 1e-12 of 2pi snap to 0 so
/// that e.g. pi + pi compares equal to the identity rotation.
double normalize_angle(double angle);

/**
 * Rotation angle of a gate: either a fixed constant or `coeff * theta[symbol]
 * + offset` with coeff in {+1, -1}. Angles are kept normalized to [0, 2pi).
 */
class ParamExpr {
 public:
  static ParamExpr constant(double angle);
  static ParamExpr affine(SymbolId symbol, int coeff = 1, double offset = 0.0);

  bool is_const() const { return !symbol_.has_value(); }
  bool is_affine() const { return symbol_.has_value(); }

  /// Constant angle (Const) or offset (Affine).
  double offset() const { return offset_; }
  /// Precondition: is_affine().
  SymbolId symbol() const { return *symbol_; }
  int coeff() const { return coeff_; }

  double evaluate(std::span<const double> theta) const;
  /// Same expression with `delta` added to the offset / constant.
  ParamExpr shifted(double delta) const;

  bool operator==(const ParamExpr&) const = default;

 private:
  ParamExpr(std::optional<SymbolId> symbol, int coeff, double offset)
      : symbol_(symbol), coeff_(coeff), offset_(offset) {}

  std::optional<SymbolId> symbol_;
  int coeff_ = 1;
  double offset_ = 0.0;
};

enum class GateKind { RX, RY, RZ, SX, X, H, CX, SWAP };

std::string_view to_string(GateKind kind);
/// Throws std::invalid_argument on an unknown name.
GateKind parse_gate_kind(std::string_view name);

std::size_t arity(GateKind kind);
bool is_rotation(GateKind kind);

struct Gate {
  GateKind kind;
  std::array<Qubit, 2> qubits{};
  std::optional<ParamExpr> param;

  std::size_t num_qubits() const { return arity(kind); }
  Qubit qubit() const { return qubits[0]; }
  Qubit control() const { return qubits[0]; }
  Qubit target() const { return qubits[1]; }
  bool acts_on(Qubit q) const {
    return qubits[0] == q || (num_qubits() == 2 && qubits[1] == q);
  }

  static Gate rx(Qubit q, ParamExpr angle) { return {GateKind::RX, {q, 0}, angle}; }
  static Gate ry(Qubit q, ParamExpr angle) { return {GateKind::RY, {q, 0}, angle}; }
  static Gate rz(Qubit q, ParamExpr angle) { return {GateKind::RZ, {q, 0}, angle}; }
  static Gate sx(Qubit q) { return {GateKind::SX, {q, 0}, std::nullopt}; }
  static Gate x(Qubit q) { return {GateKind::X, {q, 0}, std::nullopt}; }
  static Gate h(Qubit q) { return {GateKind::H, {q, 0}, std::nullopt}; }
  static Gate cx(Qubit control, Qubit target) {
    return {GateKind::CX, {control, target}, std::nullopt};
  }
  static Gate swap(Qubit a, Qubit b) {
    return {GateKind::SWAP, {a, b}, std::nullopt};
  }

  bool operator==(const Gate&) const = default;
};

/**
 * Ordered gate list over a fixed register with `num_symbols` trainable
 * parameters. Construction validates every invariant: gate arity and
 * parameter presence, distinct operands, qubit bounds, and that symbol ids
 * are exactly 0..num_symbols-1, each referenced at least once.
 *
 * A circuit with num_symbols() == 0 whose rotations are all constant is a
 * concrete (bound) circuit and can be simulated directly.
 */
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}
  Circuit(std::size_t num_qubits, std::vector<Gate> gates,
          std::size_t num_symbols);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_symbols() const { return num_symbols_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const std::vector<Gate>& gates() const { return gates_; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  bool is_concrete() const;

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::size_t num_symbols_ = 0;
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate_gate(const Gate& gate, std::size_t num_qubits);

struct StructuralMetrics {
  std::size_t g1q = 0;
  std::size_t g2q = 0;
  std::size_t dag_depth = 0;
  std::size_t num_symbols = 0;

  bool operator==(const StructuralMetrics&) const = default;
};

struct GateCounts {
  std::size_t g1q = 0;
  std::size_t g2q = 0;
  bool operator==(const GateCounts&) const = default;
};

GateCounts gate_counts(const Circuit& circuit);

/// Longest chain in the dependency DAG; gates conflict iff they share a qubit.
std::size_t dag_depth(const Circuit& circuit);

StructuralMetrics structural_metrics(const Circuit& circuit);

/// Replaces every affine angle by its normalized value at `theta`.
/// Throws std::invalid_argument("parameter count mismatch").
Circuit bind(const Circuit& circuit, std::span<const double> theta);

}  // namespace vqclab
