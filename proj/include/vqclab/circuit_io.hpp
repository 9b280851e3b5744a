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

#include <filesystem>
#include <string>
#include <string_view>

#include "vqclab/circuit.hpp"

namespace vqclab {

// Line-based text format:
//
//   qubits:3 symbols:2
//   RY 0 affine:0:+1:0
//   CX 0,1
//   RZ 2 const:1.5707963267948966
//
// Blank lines and lines starting with '#' are ignored. Angles are written
// with 17 significant digits so that a write/read cycle is exact.

std::string format_param(const ParamExpr& expr);
std::string to_text(const Circuit& circuit);

/// Throws std::runtime_error("line N: ...") on malformed input.
Circuit parse_circuit(std::string_view text);

Circuit read_circuit(const std::filesystem::path& path);
void write_circuit(const Circuit& circuit, const std::filesystem::path& path);

}  // namespace vqclab
