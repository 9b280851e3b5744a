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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vqclab/circuit.hpp"

namespace vqclab {

using Complex = std::complex<double>;

/// Largest register the dense simulator accepts.
inline constexpr std::size_t kMaxSimQubits = 24;

/**
 * Dense statevector over n qubits. Qubit 0 is the least significant bit of
 * the amplitude index. Starts in |0...0>.
 */
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }

  void apply_rx(Qubit q, double angle);
  void apply_ry(Qubit q, double angle);
  void apply_rz(Qubit q, double angle);
  void apply_sx(Qubit q);
  void apply_sx_dagger(Qubit q);
  void apply_x(Qubit q);
  void apply_h(Qubit q);
  void apply_cx(Qubit control, Qubit target);
  void apply_swap(Qubit a, Qubit b);

  /// Applies `gate` with rotation angle `angle` (ignored for fixed gates).
  void apply(const Gate& gate, double angle);
  /// Applies the inverse of `gate` at `angle`.
  void apply_inverse(const Gate& gate, double angle);

  /// Multiplies by the Pauli generator of a rotation kind (X, Y or Z).
  void apply_generator(GateKind rotation, Qubit q);

  double expect_z(Qubit q) const;
  double norm_squared() const;

 private:
  void apply_1q(Qubit q, const Complex m[4]);

  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

/// <bra| P |ket> where P is the Pauli generator (X, Y or Z) of `rotation`
/// acting on qubit q.
Complex generator_matrix_element(const StateVector& bra, GateKind rotation,
                                 Qubit q, const StateVector& ket);

/// Per-gate rotation angles of `circuit` at `theta` (0 for fixed gates).
std::vector<double> gate_angles(const Circuit& circuit,
                                std::span<const double> theta);

/// Evolves |0...0> through a concrete circuit. Throws std::invalid_argument
/// on an unbound symbol or a register above kMaxSimQubits.
StateVector simulate(const Circuit& circuit);

/// Evolves |0...0> through `circuit` with symbols bound to `theta`.
StateVector simulate(const Circuit& circuit, std::span<const double> theta);

/// <Z_qubit> of the simulated concrete circuit.
double expect_z(const Circuit& circuit, Qubit qubit);

}  // namespace vqclab
