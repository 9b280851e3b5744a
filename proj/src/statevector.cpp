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

#include "vqclab/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace vqclab {

namespace {

constexpr Complex kI{0.0, 1.0};

// Visits every index pair (i0, i1) differing only in bit q, with bit q of i0
// clear.
template <typename F>
inline void for_each_pair(std::size_t dim, Qubit q, F&& f) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t hi = 0; hi < dim; hi += 2 * stride) {
    for (std::size_t lo = hi; lo < hi + stride; ++lo) f(lo, lo | stride);
  }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > kMaxSimQubits) {
    throw std::invalid_argument("register of " + std::to_string(num_qubits) +
                                " qubits exceeds simulator cap of " +
                                std::to_string(kMaxSimQubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply_1q(Qubit q, const Complex m[4]) {
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a = amps_[i0];
    const Complex b = amps_[i1];
    amps_[i0] = m[0] * a + m[1] * b;
    amps_[i1] = m[2] * a + m[3] * b;
  });
}

void StateVector::apply_rx(Qubit q, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const Complex m[4] = {c, -kI * s, -kI * s, c};
  apply_1q(q, m);
}

void StateVector::apply_ry(Qubit q, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a = amps_[i0];
    const Complex b = amps_[i1];
    amps_[i0] = c * a - s * b;
    amps_[i1] = s * a + c * b;
  });
}

void StateVector::apply_rz(Qubit q, double angle) {
  const Complex p0 = std::polar(1.0, -angle / 2);
  const Complex p1 = std::polar(1.0, angle / 2);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    amps_[i0] *= p0;
    amps_[i1] *= p1;
  });
}

void StateVector::apply_sx(Qubit q) {
  const Complex p{0.5, 0.5};
  const Complex m{0.5, -0.5};
  const Complex mat[4] = {p, m, m, p};
  apply_1q(q, mat);
}

void StateVector::apply_sx_dagger(Qubit q) {
  const Complex p{0.5, -0.5};
  const Complex m{0.5, 0.5};
  const Complex mat[4] = {p, m, m, p};
  apply_1q(q, mat);
}

void StateVector::apply_x(Qubit q) {
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    std::swap(amps_[i0], amps_[i1]);
  });
}

void StateVector::apply_h(Qubit q) {
  const double r = 1.0 / std::sqrt(2.0);
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    const Complex a = amps_[i0];
    const Complex b = amps_[i1];
    amps_[i0] = r * (a + b);
    amps_[i1] = r * (a - b);
  });
}

void StateVector::apply_cx(Qubit control, Qubit target) {
  const std::size_t cmask = std::size_t{1} << control;
  for_each_pair(amps_.size(), target, [&](std::size_t i0, std::size_t i1) {
    if (i0 & cmask) std::swap(amps_[i0], amps_[i1]);
  });
}

void StateVector::apply_swap(Qubit a, Qubit b) {
  const std::size_t amask = std::size_t{1} << a;
  const std::size_t bmask = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    // Visit each |..1_a..0_b..> once and exchange with |..0_a..1_b..>.
    if ((i & amask) && !(i & bmask)) std::swap(amps_[i], amps_[i ^ amask ^ bmask]);
  }
}

void StateVector::apply(const Gate& gate, double angle) {
  switch (gate.kind) {
    case GateKind::RX: apply_rx(gate.qubit(), angle); break;
    case GateKind::RY: apply_ry(gate.qubit(), angle); break;
    case GateKind::RZ: apply_rz(gate.qubit(), angle); break;
    case GateKind::SX: apply_sx(gate.qubit()); break;
    case GateKind::X: apply_x(gate.qubit()); break;
    case GateKind::H: apply_h(gate.qubit()); break;
    case GateKind::CX: apply_cx(gate.control(), gate.target()); break;
    case GateKind::SWAP: apply_swap(gate.qubits[0], gate.qubits[1]); break;
  }
}

void StateVector::apply_inverse(const Gate& gate, double angle) {
  switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: apply(gate, -angle); break;
    case GateKind::SX: apply_sx_dagger(gate.qubit()); break;
    default: apply(gate, 0.0); break;
  }
}

void StateVector::apply_generator(GateKind rotation, Qubit q) {
  switch (rotation) {
    case GateKind::RX:
      apply_x(q);
      break;
    case GateKind::RY:
      for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
        const Complex a = amps_[i0];
        amps_[i0] = -kI * amps_[i1];
        amps_[i1] = kI * a;
      });
      break;
    case GateKind::RZ:
      for_each_pair(amps_.size(), q,
                    [&](std::size_t, std::size_t i1) { amps_[i1] = -amps_[i1]; });
      break;
    default:
      throw std::invalid_argument("not a rotation kind");
  }
}

double StateVector::expect_z(Qubit q) const {
  if (q >= num_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
  }
  double total = 0.0;
  for_each_pair(amps_.size(), q, [&](std::size_t i0, std::size_t i1) {
    total += std::norm(amps_[i0]) - std::norm(amps_[i1]);
  });
  return total;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

Complex generator_matrix_element(const StateVector& bra, GateKind rotation,
                                 Qubit q, const StateVector& ket) {
  const auto b = bra.amplitudes();
  const auto k = ket.amplitudes();
  Complex total{0.0, 0.0};
  switch (rotation) {
    case GateKind::RX:
      for_each_pair(k.size(), q, [&](std::size_t i0, std::size_t i1) {
        total += std::conj(b[i0]) * k[i1] + std::conj(b[i1]) * k[i0];
      });
      break;
    case GateKind::RY:
      // Y|0> = i|1>, Y|1> = -i|0>.
      for_each_pair(k.size(), q, [&](std::size_t i0, std::size_t i1) {
        total += -kI * std::conj(b[i0]) * k[i1] + kI * std::conj(b[i1]) * k[i0];
      });
      break;
    case GateKind::RZ:
      for_each_pair(k.size(), q, [&](std::size_t i0, std::size_t i1) {
        total += std::conj(b[i0]) * k[i0] - std::conj(b[i1]) * k[i1];
      });
      break;
    default:
      throw std::invalid_argument("not a rotation kind");
  }
  return total;
}

std::vector<double> gate_angles(const Circuit& circuit,
                                std::span<const double> theta) {
  std::vector<double> angles(circuit.size(), 0.0);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const auto& p = circuit.gates()[i].param;
    if (p) angles[i] = p->evaluate(theta);
  }
  return angles;
}

StateVector simulate(const Circuit& circuit) {
  if (!circuit.is_concrete()) {
    throw std::invalid_argument("unbound symbol in circuit");
  }
  return simulate(circuit, {});
}

StateVector simulate(const Circuit& circuit, std::span<const double> theta) {
  if (theta.size() != circuit.num_symbols()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  StateVector state(circuit.num_qubits());
  const auto angles = gate_angles(circuit, theta);
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    state.apply(circuit.gates()[i], angles[i]);
  }
  return state;
}

double expect_z(const Circuit& circuit, Qubit qubit) {
  if (qubit >= circuit.num_qubits()) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range");
  }
  return simulate(circuit).expect_z(qubit);
}

}  // namespace vqclab
