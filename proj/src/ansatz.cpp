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

#include "vqclab/ansatz.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace vqclab {

namespace {

void check_shape(std::size_t n, std::size_t reps) {
  if (n < 2 || reps < 1) throw std::invalid_argument("invalid ansatz shape");
}

/// Accumulates gates and hands out fresh symbols in gate order.
class Builder {
 public:
  explicit Builder(std::size_t n) : n_(n) {}

  void ry(Qubit q) { gates_.push_back(Gate::ry(q, ParamExpr::affine(next_++))); }
  void rz(Qubit q) { gates_.push_back(Gate::rz(q, ParamExpr::affine(next_++))); }
  void cx(Qubit c, Qubit t) { gates_.push_back(Gate::cx(c, t)); }

  Circuit finish() && { return Circuit(n_, std::move(gates_), next_); }

 private:
  std::size_t n_;
  std::vector<Gate> gates_;
  SymbolId next_ = 0;
};

}  // namespace

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::EfficientSU2: return "efficient_su2";
    case AnsatzKind::TTN: return "ttn";
    case AnsatzKind::RealAmplitudes: return "real_amplitudes";
  }
  return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  for (auto k : {AnsatzKind::EfficientSU2, AnsatzKind::TTN,
                 AnsatzKind::RealAmplitudes}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown ansatz '" + std::string(name) + "'");
}

Circuit build_real_amplitudes(std::size_t n, std::size_t reps) {
  check_shape(n, reps);
  Builder b(n);
  for (std::size_t r = 0; r < reps; ++r) {
    for (Qubit q = 0; q < n; ++q) b.ry(q);
    for (Qubit q = 0; q + 1 < n; ++q) b.cx(q, q + 1);
  }
  for (Qubit q = 0; q < n; ++q) b.ry(q);
  return std::move(b).finish();
}

Circuit build_efficient_su2(std::size_t n, std::size_t reps) {
  check_shape(n, reps);
  Builder b(n);
  auto rotation_layer = [&] {
    for (Qubit q = 0; q < n; ++q) b.ry(q);
    for (Qubit q = 0; q < n; ++q) b.rz(q);
  };
  for (std::size_t r = 0; r < reps; ++r) {
    rotation_layer();
    for (Qubit i = 0; i < n; ++i) {
      for (Qubit j = i + 1; j < n; ++j) b.cx(i, j);
    }
  }
  rotation_layer();
  return std::move(b).finish();
}

Circuit build_ttn(std::size_t n, std::size_t reps) {
  check_shape(n, reps);
  Builder b(n);
  for (std::size_t r = 0; r < reps; ++r) {
    std::vector<Qubit> active(n);
    for (Qubit q = 0; q < n; ++q) active[q] = q;
    while (active.size() > 1) {
      std::vector<Qubit> survivors;
      std::size_t i = 0;
      for (; i + 1 < active.size(); i += 2) {
        const Qubit keep = active[i];
        const Qubit retire = active[i + 1];
        b.ry(keep);
        b.ry(retire);
        b.cx(retire, keep);
        survivors.push_back(keep);
      }
      if (i < active.size()) survivors.push_back(active[i]);
      active = std::move(survivors);
    }
    b.ry(active.front());
  }
  return std::move(b).finish();
}

Circuit build_ansatz(AnsatzKind kind, std::size_t n, std::size_t reps) {
  switch (kind) {
    case AnsatzKind::EfficientSU2: return build_efficient_su2(n, reps);
    case AnsatzKind::TTN: return build_ttn(n, reps);
    case AnsatzKind::RealAmplitudes: return build_real_amplitudes(n, reps);
  }
  throw std::invalid_argument("unknown ansatz");
}

std::size_t ansatz_num_params(AnsatzKind kind, std::size_t n,
                              std::size_t reps) {
  check_shape(n, reps);
  switch (kind) {
    case AnsatzKind::EfficientSU2: return 2 * n * (reps + 1);
    case AnsatzKind::RealAmplitudes: return n * (reps + 1);
    case AnsatzKind::TTN:
      // Every pairing retires one qubit: n-1 pairings, two RYs each, plus
      // the root rotation.
      return reps * (2 * (n - 1) + 1);
  }
  throw std::invalid_argument("unknown ansatz");
}

}  // namespace vqclab
