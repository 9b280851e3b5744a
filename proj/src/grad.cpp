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

#include "vqclab/grad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vqclab/parallel.hpp"
#include "vqclab/rng.hpp"
#include "vqclab/statevector.hpp"

namespace vqclab {

namespace {

void check_inputs(const Circuit& circuit, std::span<const double> theta,
                  Qubit cost_qubit) {
  if (theta.size() != circuit.num_symbols()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  if (cost_qubit >= circuit.num_qubits()) {
    throw std::out_of_range("cost qubit " + std::to_string(cost_qubit) +
                            " out of range");
  }
}

bool is_trainable(const Gate& g) { return g.param && g.param->is_affine(); }

}  // namespace

std::string_view to_string(ReparamMode mode) {
  return mode == ReparamMode::AllAngles ? "all-angles" : "symbol-derived";
}

ReparamMode parse_reparam_mode(std::string_view name) {
  if (name == "all-angles") return ReparamMode::AllAngles;
  if (name == "symbol-derived") return ReparamMode::SymbolDerived;
  throw std::invalid_argument("unknown reparameterization mode '" +
                              std::string(name) + "'");
}

std::string_view to_string(GradientEngine engine) {
  return engine == GradientEngine::Adjoint ? "adjoint" : "shift";
}

GradientEngine parse_gradient_engine(std::string_view name) {
  if (name == "adjoint") return GradientEngine::Adjoint;
  if (name == "shift") return GradientEngine::ParameterShift;
  throw std::invalid_argument("unknown gradient engine '" + std::string(name) +
                              "'");
}

Circuit apply_reparam_mode(const Circuit& physical,
                           const ParamProvenance& provenance, ReparamMode mode) {
  if (physical.num_symbols() != provenance.size()) {
    throw std::invalid_argument("provenance does not match the circuit symbols");
  }
  if (mode == ReparamMode::AllAngles) return physical;

  std::size_t num_logical = 0;
  for (const auto& origin : provenance) {
    if (const auto* f = std::get_if<FromLogical>(&origin)) {
      num_logical = std::max(num_logical, f->symbol + 1);
    }
  }
  std::vector<Gate> gates = physical.gates();
  for (auto& g : gates) {
    if (!g.param || g.param->is_const()) continue;
    const auto& origin = provenance[g.param->symbol()];
    if (const auto* f = std::get_if<FromLogical>(&origin)) {
      g.param = ParamExpr::affine(f->symbol, f->coeff, f->offset);
    } else {
      g.param = ParamExpr::constant(std::get<Synthesized>(origin).value);
    }
  }
  return Circuit(physical.num_qubits(), std::move(gates), num_logical);
}

ReparamCircuit reparameterize(const TranspiledCircuit& t, ReparamMode mode) {
  CompactCircuit active = compact(t.physical, t.initial_layout);
  const Qubit cost = active.compact_index(t.final_layout.at(0));
  return {apply_reparam_mode(active.circuit, t.provenance, mode), cost,
          std::move(active.physical_of)};
}

std::vector<double> param_shift_gradient(const Circuit& circuit,
                                         std::span<const double> theta,
                                         Qubit cost_qubit) {
  check_inputs(circuit, theta, cost_qubit);
  const auto& gates = circuit.gates();
  const auto angles = gate_angles(circuit, theta);
  std::vector<double> grad(circuit.num_symbols(), 0.0);

  auto shifted_cost = [&](const StateVector& prefix, std::size_t at,
                          double shift) {
    StateVector state = prefix;
    state.apply(gates[at], angles[at] + shift);
    for (std::size_t j = at + 1; j < gates.size(); ++j) {
      state.apply(gates[j], angles[j]);
    }
    return state.expect_z(cost_qubit);
  };

  StateVector prefix(circuit.num_qubits());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (is_trainable(g)) {
      const double plus = shifted_cost(prefix, i, kPi / 2);
      const double minus = shifted_cost(prefix, i, -kPi / 2);
      grad[g.param->symbol()] += g.param->coeff() * (plus - minus) / 2;
    }
    prefix.apply(g, angles[i]);
  }
  return grad;
}

std::vector<double> adjoint_gradient(const Circuit& circuit,
                                     std::span<const double> theta,
                                     Qubit cost_qubit) {
  check_inputs(circuit, theta, cost_qubit);
  const auto& gates = circuit.gates();
  const auto angles = gate_angles(circuit, theta);
  std::vector<double> grad(circuit.num_symbols(), 0.0);

  StateVector psi(circuit.num_qubits());
  for (std::size_t i = 0; i < gates.size(); ++i) psi.apply(gates[i], angles[i]);
  StateVector lambda = psi;
  lambda.apply_generator(GateKind::RZ, cost_qubit);

  // Invariant at step i: psi = state after gate i, lambda = U_{>i}^dag Z psi_f.
  for (std::size_t i = gates.size(); i-- > 0;) {
    const Gate& g = gates[i];
    if (is_trainable(g)) {
      const Complex m = generator_matrix_element(lambda, g.kind, g.qubit(), psi);
      grad[g.param->symbol()] += g.param->coeff() * m.imag();
    }
    psi.apply_inverse(g, angles[i]);
    lambda.apply_inverse(g, angles[i]);
  }
  return grad;
}

std::vector<double> gradient(GradientEngine engine, const Circuit& circuit,
                             std::span<const double> theta, Qubit cost_qubit) {
  return engine == GradientEngine::Adjoint
             ? adjoint_gradient(circuit, theta, cost_qubit)
             : param_shift_gradient(circuit, theta, cost_qubit);
}

std::vector<double> finite_difference_gradient(const Circuit& circuit,
                                               std::span<const double> theta,
                                               Qubit cost_qubit, double step) {
  check_inputs(circuit, theta, cost_qubit);
  std::vector<double> grad(theta.size());
  std::vector<double> work(theta.begin(), theta.end());
  for (std::size_t s = 0; s < theta.size(); ++s) {
    work[s] = theta[s] + step;
    const double plus = simulate(circuit, work).expect_z(cost_qubit);
    work[s] = theta[s] - step;
    const double minus = simulate(circuit, work).expect_z(cost_qubit);
    work[s] = theta[s];
    grad[s] = (plus - minus) / (2 * step);
  }
  return grad;
}

std::vector<double> sample_parameters(std::size_t num_params,
                                      std::uint64_t seed, std::size_t index) {
  SplitMix64 rng = sample_stream(seed, index);
  std::vector<double> theta(num_params);
  for (auto& t : theta) t = rng.uniform_angle();
  return theta;
}

GradStats grad_variance(const Circuit& circuit,
                        const GradVarianceOptions& options) {
  const std::size_t S = options.samples;
  if (S < 2) throw std::invalid_argument("grad_variance needs at least 2 samples");
  if (options.cost_qubit >= circuit.num_qubits()) {
    throw std::out_of_range("cost qubit out of range");
  }
  const std::size_t P = circuit.num_symbols();

  GradStats stats;
  stats.samples = S;
  stats.seed = options.seed;
  if (P == 0) {
    stats.no_parameters = true;
    return stats;
  }

  std::vector<std::vector<double>> grads(S);
  const std::size_t threads =
      options.threads == 0 ? default_thread_count() : options.threads;
  parallel_for(S, threads, [&](std::size_t s) {
    const auto theta = sample_parameters(P, options.seed, s);
    grads[s] = gradient(options.engine, circuit, theta, options.cost_qubit);
  });

  stats.per_param_mean.assign(P, 0.0);
  stats.per_param_var.assign(P, 0.0);
  for (const auto& g : grads) {
    for (std::size_t i = 0; i < P; ++i) stats.per_param_mean[i] += g[i];
  }
  for (auto& m : stats.per_param_mean) m /= static_cast<double>(S);

  const double bessel = static_cast<double>(S) / static_cast<double>(S - 1);
  std::vector<double> contribution(S, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    double c = 0.0;
    for (std::size_t i = 0; i < P; ++i) {
      const double d = grads[s][i] - stats.per_param_mean[i];
      stats.per_param_var[i] += d * d;
      c += d * d;
    }
    contribution[s] = c * bessel / static_cast<double>(P);
  }
  double total = 0.0;
  for (auto& v : stats.per_param_var) {
    v /= static_cast<double>(S - 1);
    total += v;
  }
  stats.grad_var = total / static_cast<double>(P);

  double mean_c = 0.0;
  for (double c : contribution) mean_c += c;
  mean_c /= static_cast<double>(S);
  double ss = 0.0;
  for (double c : contribution) ss += (c - mean_c) * (c - mean_c);
  stats.std_error = std::sqrt(ss / static_cast<double>(S - 1) / static_cast<double>(S));
  return stats;
}

double delta_gradvar(const GradStats& phys, const GradStats& log) {
  return phys.grad_var - log.grad_var;
}

std::string grad_stats_to_json(const GradStats& stats) {
  nlohmann::ordered_json doc = {
      {"grad_var", stats.grad_var},
      {"std_error", stats.std_error},
      {"samples", stats.samples},
      {"seed", stats.seed},
      {"num_params", stats.per_param_var.size()},
      {"no_parameters", stats.no_parameters},
      {"per_param_var", stats.per_param_var},
      {"per_param_mean", stats.per_param_mean},
  };
  return doc.dump(2) + "\n";
}

}  // namespace vqclab
