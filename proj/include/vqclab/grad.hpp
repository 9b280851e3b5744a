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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vqclab/circuit.hpp"
#include "vqclab/transpiler.hpp"

namespace vqclab {

/// How a transpiled circuit's angles become trainable parameters.
///   AllAngles:     every surviving rotation is an independent parameter.
///   SymbolDerived: rotations keep their logical symbol (shared parameter
///                  space with the logical circuit); constants stay fixed.
enum class ReparamMode { AllAngles, SymbolDerived };

std::string_view to_string(ReparamMode mode);  // "all-angles" / "symbol-derived"
ReparamMode parse_reparam_mode(std::string_view name);

/// Circuit ready for gradient evaluation on the compact active register.
struct ReparamCircuit {
  Circuit circuit;
  Qubit cost_qubit;                // compact index of final_layout[0]
  std::vector<Qubit> physical_of;  // compact index -> physical qubit
};

ReparamCircuit reparameterize(const TranspiledCircuit& t, ReparamMode mode);

/// Symbol rewrite behind reparameterize(), on any register: AllAngles
/// returns `physical` unchanged; SymbolDerived substitutes each angle's
/// provenance (logical affine expression or constant).
Circuit apply_reparam_mode(const Circuit& physical,
                           const ParamProvenance& provenance, ReparamMode mode);

/// Both engines compute the parameter-shift gradient of <Z_cost_qubit>.
///   ParameterShift: two shifted circuit evaluations per symbol occurrence.
///   Adjoint:        one forward and one backward sweep using
///                   (L(a + pi/2) - L(a - pi/2)) / 2 = Im <lambda|P|psi>
///                   for a Pauli rotation exp(-i a P / 2); same values,
///                   O(gates) instead of O(params * gates).
enum class GradientEngine { ParameterShift, Adjoint };

std::string_view to_string(GradientEngine engine);  // "shift" / "adjoint"
GradientEngine parse_gradient_engine(std::string_view name);

/// d<Z_cost_qubit>/d theta_s summed over all occurrences of s, each shifted
/// by +-pi/2 and weighted by its coefficient.
std::vector<double> param_shift_gradient(const Circuit& circuit,
                                         std::span<const double> theta,
                                         Qubit cost_qubit = 0);

std::vector<double> adjoint_gradient(const Circuit& circuit,
                                     std::span<const double> theta,
                                     Qubit cost_qubit = 0);

std::vector<double> gradient(GradientEngine engine, const Circuit& circuit,
                             std::span<const double> theta, Qubit cost_qubit);

/// Central finite difference of <Z_cost_qubit>; reference oracle.
std::vector<double> finite_difference_gradient(const Circuit& circuit,
                                               std::span<const double> theta,
                                               Qubit cost_qubit = 0,
                                               double step = 1e-5);

/// Parameter vector of gradient sample `index`: num_params uniform angles
/// in [0, 2pi) from sample_stream(seed, index).
std::vector<double> sample_parameters(std::size_t num_params,
                                      std::uint64_t seed, std::size_t index);

struct GradStats {
  std::vector<double> per_param_var;   // unbiased (S-1) estimator
  std::vector<double> per_param_mean;
  double grad_var = 0.0;               // mean of per_param_var
  /// Standard error of grad_var: sd over samples of each sample's
  /// contribution (1/P) sum_i (g_i - mean_i)^2 * S/(S-1), divided by sqrt(S).
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Set when the circuit has no parameters; grad_var is then 0.
  bool no_parameters = false;
};

struct GradVarianceOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  Qubit cost_qubit = 0;
  GradientEngine engine = GradientEngine::Adjoint;
  /// 0 = use default_thread_count().
  std::size_t threads = 1;
};

/// Throws std::invalid_argument when samples < 2.
GradStats grad_variance(const Circuit& circuit, const GradVarianceOptions& options);

/// Positive: gradient amplification after transpilation.
double delta_gradvar(const GradStats& phys, const GradStats& log);

std::string grad_stats_to_json(const GradStats& stats);

}  // namespace vqclab
