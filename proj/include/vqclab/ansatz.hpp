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
#include <string_view>

#include "vqclab/circuit.hpp"

namespace vqclab {

enum class AnsatzKind { EfficientSU2, TTN, RealAmplitudes };

/// "efficient_su2", "ttn", "real_amplitudes".
std::string_view to_string(AnsatzKind kind);
AnsatzKind parse_ansatz_kind(std::string_view name);

// All builders take n >= 2 qubits and L >= 1 repetitions and throw
// std::invalid_argument("invalid ansatz shape") otherwise. Every rotation
// gets a fresh symbol (coeff +1, offset 0), numbered in gate order.

/// RY layer + CX chain (i, i+1) per repetition, closing RY layer.
/// P = n(L+1).
Circuit build_real_amplitudes(std::size_t n, std::size_t reps);

/// RY layer, RZ layer, CX on every pair i<j in lexicographic order per
/// repetition, closing RY+RZ layer. P = 2n(L+1).
Circuit build_efficient_su2(std::size_t n, std::size_t reps);

/// Binary-tree contraction repeated L times. Each level pairs consecutive
/// active qubits (a, b): RY a, RY b, CX(b -> a); b retires and a trailing
/// unpaired qubit passes through. The tree ends with RY on the root, which
/// is always qubit 0.
Circuit build_ttn(std::size_t n, std::size_t reps);

Circuit build_ansatz(AnsatzKind kind, std::size_t n, std::size_t reps);

/// Closed-form parameter count of build_ansatz(kind, n, reps).
std::size_t ansatz_num_params(AnsatzKind kind, std::size_t n, std::size_t reps);

}  // namespace vqclab
