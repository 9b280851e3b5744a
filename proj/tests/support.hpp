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

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "vqclab/circuit.hpp"
#include "vqclab/rng.hpp"
#include "vqclab/statevector.hpp"
#include "vqclab/transpiler.hpp"

namespace vqclab::testing {

using C = std::complex<double>;

/// Row-major dense matrix.
struct Dense {
  std::size_t dim = 0;
  std::vector<C> m;

  explicit Dense(std::size_t d) : dim(d), m(d * d, 0.0) {}
  C& operator()(std::size_t r, std::size_t c) { return m[r * dim + c]; }
  C operator()(std::size_t r, std::size_t c) const { return m[r * dim + c]; }

  static Dense identity(std::size_t d) {
    Dense out(d);
    for (std::size_t i = 0; i < d; ++i) out(i, i) = 1.0;
    return out;
  }
};

inline Dense matmul(const Dense& a, const Dense& b) {
  Dense out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      const C aik = a(i, k);
      if (aik == C(0.0)) continue;
      for (std::size_t j = 0; j < a.dim; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.dim * b.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k)
        for (std::size_t l = 0; l < b.dim; ++l)
          out(i * b.dim + k, j * b.dim + l) = a(i, j) * b(k, l);
  return out;
}

/// Textbook single-qubit matrices.
inline Dense one_qubit_matrix(GateKind kind, double a) {
  const C i(0.0, 1.0);
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  Dense u(2);
  switch (kind) {
    case GateKind::RX:
      u(0, 0) = c; u(0, 1) = -i * s; u(1, 0) = -i * s; u(1, 1) = c;
      break;
    case GateKind::RY:
      u(0, 0) = c; u(0, 1) = -s; u(1, 0) = s; u(1, 1) = c;
      break;
    case GateKind::RZ:
      u(0, 0) = std::exp(-i * (a / 2)); u(1, 1) = std::exp(i * (a / 2));
      break;
    case GateKind::SX:
      u(0, 0) = (1.0 + i) / 2.0; u(0, 1) = (1.0 - i) / 2.0;
      u(1, 0) = (1.0 - i) / 2.0; u(1, 1) = (1.0 + i) / 2.0;
      break;
    case GateKind::X:
      u(0, 1) = 1.0; u(1, 0) = 1.0;
      break;
    case GateKind::H:
      u(0, 0) = u(0, 1) = u(1, 0) = 1.0 / std::sqrt(2.0);
      u(1, 1) = -1.0 / std::sqrt(2.0);
      break;
    default:
      throw std::invalid_argument("not a 1q gate");
  }
  return u;
}

/// Full-register unitary of one gate; qubit 0 is the least significant bit,
/// so the Kronecker product runs from qubit n-1 down to 0.
inline Dense gate_unitary(const Gate& g, double angle, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  if (g.num_qubits() == 1) {
    Dense u = Dense::identity(1);
    for (std::size_t q = n; q-- > 0;) {
      u = kron(u, q == g.qubit() ? one_qubit_matrix(g.kind, angle)
                                 : Dense::identity(2));
    }
    return u;
  }
  // Permutation matrices for CX / SWAP from their basis-state action.
  Dense u(dim);
  const Qubit a = g.qubits[0], b = g.qubits[1];
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t y = x;
    const bool ba = (x >> a) & 1, bb = (x >> b) & 1;
    if (g.kind == GateKind::CX) {
      if (ba) y ^= std::size_t{1} << b;
    } else {
      y &= ~((std::size_t{1} << a) | (std::size_t{1} << b));
      y |= (std::size_t(bb) << a) | (std::size_t(ba) << b);
    }
    u(y, x) = 1.0;
  }
  return u;
}

inline std::vector<double> angles_of(const Circuit& c, std::span<const double> theta) {
  std::vector<double> out;
  for (const auto& g : c) out.push_back(g.param ? g.param->evaluate(theta) : 0.0);
  return out;
}

inline Dense circuit_unitary(const Circuit& c, std::span<const double> theta) {
  const auto angles = angles_of(c, theta);
  Dense u = Dense::identity(std::size_t{1} << c.num_qubits());
  for (std::size_t i = 0; i < c.size(); ++i) {
    u = matmul(gate_unitary(c.gates()[i], angles[i], c.num_qubits()), u);
  }
  return u;
}

/// Reference state: first column of the dense circuit unitary.
inline std::vector<C> reference_state(const Circuit& c, std::span<const double> theta) {
  const Dense u = circuit_unitary(c, theta);
  std::vector<C> psi(u.dim);
  for (std::size_t i = 0; i < u.dim; ++i) psi[i] = u(i, 0);
  return psi;
}

inline double reference_expect_z(const std::vector<C>& psi, Qubit q) {
  double e = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    e += std::norm(psi[i]) * (((i >> q) & 1) ? -1.0 : 1.0);
  }
  return e;
}

/// |<a|b>|^2 / (|a|^2 |b|^2), i.e. equality up to global phase.
inline double fidelity_2x2(const Dense& a, const Dense& b) {
  C inner = 0.0;
  for (std::size_t k = 0; k < 4; ++k) inner += std::conj(a.m[k]) * b.m[k];
  return std::norm(inner) / 4.0;
}

inline std::vector<double> random_angles(std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> out(count);
  for (auto& a : out) a = rng.uniform_angle();
  return out;
}

/**
 * Fidelity between the logical state and a physical circuit's state, with
 * logical qubit l read from physical qubit final_layout[l]. Every other
 * active physical qubit must be back in |0>. `physical` is compacted over
 * `initial_layout` before simulation.
 */
inline double layout_fidelity(const Circuit& logical, std::span<const double> theta,
                              const Circuit& physical, std::span<const double> phys_theta,
                              const Layout& initial_layout, const Layout& final_layout) {
  const StateVector log_state = simulate(logical, theta);
  const CompactCircuit active = compact(physical, initial_layout);
  const StateVector phys_state = simulate(active.circuit, phys_theta);

  std::vector<Qubit> where(logical.num_qubits());
  for (Qubit l = 0; l < logical.num_qubits(); ++l) {
    where[l] = active.compact_index(final_layout[l]);
  }
  C overlap = 0.0;
  const auto la = log_state.amplitudes();
  const auto pa = phys_state.amplitudes();
  for (std::size_t x = 0; x < la.size(); ++x) {
    std::size_t idx = 0;
    for (Qubit l = 0; l < where.size(); ++l) {
      if ((x >> l) & 1) idx |= std::size_t{1} << where[l];
    }
    overlap += std::conj(pa[idx]) * la[x];
  }
  return std::norm(overlap);
}

/// layout_fidelity of a full transpile result bound through its provenance.
inline double transpile_fidelity(const Circuit& logical, const TranspiledCircuit& t,
                                 std::span<const double> theta) {
  const auto phys_theta = bind_provenance(t.provenance, theta);
  return layout_fidelity(logical, theta, t.physical, phys_theta, t.initial_layout,
                         t.final_layout);
}

}  // namespace vqclab::testing
