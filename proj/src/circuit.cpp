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

#include "vqclab/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqclab {

namespace {
constexpr double kSnapTolerance = 1e-12;
}  // namespace

double normalize_angle(double angle) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("non-finite angle");
  }
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kSnapTolerance || r < kSnapTolerance) r = 0.0;
  return r;
}

ParamExpr ParamExpr::constant(double angle) {
  return ParamExpr(std::nullopt, 1, normalize_angle(angle));
}

ParamExpr ParamExpr::affine(SymbolId symbol, int coeff, double offset) {
  if (coeff != 1 && coeff != -1) {
    throw std::invalid_argument("affine coefficient must be +1 or -1");
  }
  return ParamExpr(symbol, coeff, normalize_angle(offset));
}

double ParamExpr::evaluate(std::span<const double> theta) const {
  if (is_const()) return offset_;
  if (*symbol_ >= theta.size()) {
    throw std::out_of_range("unbound symbol " + std::to_string(*symbol_));
  }
  return coeff_ * theta[*symbol_] + offset_;
}

ParamExpr ParamExpr::shifted(double delta) const {
  return ParamExpr(symbol_, coeff_, normalize_angle(offset_ + delta));
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::SX: return "SX";
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::CX: return "CX";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::SX,
                     GateKind::X, GateKind::H, GateKind::CX, GateKind::SWAP}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

std::size_t arity(GateKind kind) {
  return (kind == GateKind::CX || kind == GateKind::SWAP) ? 2 : 1;
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

void validate_gate(const Gate& gate, std::size_t num_qubits) {
  const auto name = std::string(to_string(gate.kind));
  if (is_rotation(gate.kind) != gate.param.has_value()) {
    throw std::invalid_argument(
        name + (gate.param ? ": unexpected parameter" : ": missing parameter"));
  }
  for (std::size_t i = 0; i < gate.num_qubits(); ++i) {
    if (gate.qubits[i] >= num_qubits) {
      throw std::invalid_argument(name + ": qubit " +
                                  std::to_string(gate.qubits[i]) +
                                  " out of range");
    }
  }
  if (gate.num_qubits() == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw std::invalid_argument(name + ": qubit operands must be distinct");
  }
}

Circuit::Circuit(std::size_t num_qubits, std::vector<Gate> gates,
                 std::size_t num_symbols)
    : num_qubits_(num_qubits), gates_(std::move(gates)),
      num_symbols_(num_symbols) {
  std::vector<bool> referenced(num_symbols_, false);
  for (auto& gate : gates_) {
    validate_gate(gate, num_qubits_);
    if (gate.num_qubits() == 1) gate.qubits[1] = 0;
    if (gate.param && gate.param->is_affine()) {
      const SymbolId s = gate.param->symbol();
      if (s >= num_symbols_) {
        throw std::invalid_argument("symbol " + std::to_string(s) +
                                    " exceeds symbol count " +
                                    std::to_string(num_symbols_));
      }
      referenced[s] = true;
    }
  }
  const auto unused = std::find(referenced.begin(), referenced.end(), false);
  if (unused != referenced.end()) {
    throw std::invalid_argument(
        "symbol " + std::to_string(unused - referenced.begin()) +
        " is not referenced by any gate");
  }
}

bool Circuit::is_concrete() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) {
    return !g.param || g.param->is_const();
  });
}

GateCounts gate_counts(const Circuit& circuit) {
  GateCounts counts;
  for (const auto& gate : circuit) {
    (gate.num_qubits() == 1 ? counts.g1q : counts.g2q) += 1;
  }
  return counts;
}

std::size_t dag_depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.num_qubits(), 0);
  std::size_t depth = 0;
  for (const auto& gate : circuit) {
    std::size_t l = level[gate.qubits[0]];
    if (gate.num_qubits() == 2) l = std::max(l, level[gate.qubits[1]]);
    ++l;
    level[gate.qubits[0]] = l;
    if (gate.num_qubits() == 2) level[gate.qubits[1]] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

StructuralMetrics structural_metrics(const Circuit& circuit) {
  const auto counts = gate_counts(circuit);
  return {counts.g1q, counts.g2q, dag_depth(circuit), circuit.num_symbols()};
}

Circuit bind(const Circuit& circuit, std::span<const double> theta) {
  if (theta.size() != circuit.num_symbols()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  std::vector<Gate> gates = circuit.gates();
  for (auto& gate : gates) {
    if (gate.param && gate.param->is_affine()) {
      gate.param = ParamExpr::constant(gate.param->evaluate(theta));
    }
  }
  return Circuit(circuit.num_qubits(), std::move(gates), 0);
}

}  // namespace vqclab
