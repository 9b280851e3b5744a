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

#include "vqclab/transpiler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "vqclab/rng.hpp"

namespace vqclab {

namespace {

constexpr Qubit kNone = std::numeric_limits<Qubit>::max();

/// BFS path from `from` to `to`, inclusive. Neighbor lists are ascending, so
/// ties at each level resolve towards smaller indices.
std::vector<Qubit> shortest_path(const BackendModel& backend, Qubit from,
                                 Qubit to) {
  std::vector<Qubit> parent(backend.num_physical(), kNone);
  std::queue<Qubit> frontier;
  parent[from] = from;
  frontier.push(from);
  while (!frontier.empty() && parent[to] == kNone) {
    const Qubit v = frontier.front();
    frontier.pop();
    for (Qubit w : backend.neighbors(v)) {
      if (parent[w] == kNone) {
        parent[w] = v;
        frontier.push(w);
      }
    }
  }
  std::vector<Qubit> path{to};
  for (Qubit v = to; v != from; v = parent[v]) path.push_back(parent[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

struct EulerAngles {
  ParamExpr theta;
  double phi;
  double lambda;
};

/// U(theta, phi, lambda) parameters of a non-native 1-qubit gate, up to
/// global phase.
EulerAngles euler_angles(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::RY: return {*gate.param, 0.0, 0.0};
    case GateKind::RX: return {*gate.param, -kPi / 2, kPi / 2};
    case GateKind::H: return {ParamExpr::constant(kPi / 2), 0.0, kPi};
    case GateKind::X: return {ParamExpr::constant(kPi), 0.0, kPi};
    default: break;
  }
  throw std::invalid_argument("unsupported gate kind " +
                              std::string(to_string(gate.kind)));
}

bool is_zero(const ParamExpr& p) { return p.is_const() && p.offset() == 0.0; }

void emit_rz(std::vector<Gate>& out, Qubit q, const ParamExpr& angle) {
  if (!is_zero(angle)) out.push_back(Gate::rz(q, angle));
}

/// Sum of two RZ angles when it stays in the affine single-symbol form.
std::optional<ParamExpr> merge_angles(const ParamExpr& a, const ParamExpr& b) {
  if (a.is_const() && b.is_const()) {
    return ParamExpr::constant(a.offset() + b.offset());
  }
  if (a.is_const()) return b.shifted(a.offset());
  if (b.is_const()) return a.shifted(b.offset());
  if (a.symbol() == b.symbol() && a.coeff() == -b.coeff()) {
    return ParamExpr::constant(a.offset() + b.offset());
  }
  return std::nullopt;
}

/// One left-to-right peephole sweep. Each qubit keeps a stack of the live
/// output gates on its wire, so a cancellation exposes the previous gate to
/// the rest of the sweep. Returns true if anything changed.
bool peephole_pass(std::size_t num_qubits, std::size_t num_symbols,
                   std::vector<Gate>& gates) {
  std::vector<Gate> out;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> wire(num_qubits);
  std::vector<std::size_t> refs(num_symbols, 0);
  for (const auto& g : gates) {
    if (g.param && g.param->is_affine()) ++refs[g.param->symbol()];
  }
  bool changed = false;

  auto top = [&](Qubit q) -> std::optional<std::size_t> {
    if (wire[q].empty()) return std::nullopt;
    return wire[q].back();
  };
  auto kill = [&](std::size_t idx) {
    alive[idx] = false;
    const Gate& g = out[idx];
    wire[g.qubits[0]].pop_back();
    if (g.num_qubits() == 2) wire[g.qubits[1]].pop_back();
    changed = true;
  };
  auto push = [&](const Gate& g) {
    out.push_back(g);
    alive.push_back(true);
    wire[g.qubits[0]].push_back(out.size() - 1);
    if (g.num_qubits() == 2) wire[g.qubits[1]].push_back(out.size() - 1);
  };

  for (const auto& g : gates) {
    if (g.kind == GateKind::RZ) {
      const Qubit q = g.qubit();
      if (auto t = top(q); t && out[*t].kind == GateKind::RZ) {
        const ParamExpr& prev = *out[*t].param;
        const ParamExpr& cur = *g.param;
        // Both occurrences of a symbol cancelling would leave it unreferenced.
        const bool drops_symbol = prev.is_affine() && cur.is_affine() &&
                                  refs[prev.symbol()] <= 2;
        auto merged = merge_angles(prev, cur);
        if (merged && !drops_symbol) {
          if (prev.is_affine() && cur.is_affine()) refs[prev.symbol()] -= 2;
          out[*t].param = *merged;
          changed = true;
          if (is_zero(*merged)) kill(*t);
          continue;
        }
      }
      if (is_zero(*g.param)) {
        changed = true;
        continue;
      }
      push(g);
    } else if (g.kind == GateKind::SX) {
      const auto& w = wire[g.qubit()];
      const bool three_sx =
          w.size() >= 3 && std::all_of(w.end() - 3, w.end(), [&](std::size_t i) {
            return out[i].kind == GateKind::SX;
          });
      if (three_sx) {
        for (int i = 0; i < 3; ++i) kill(wire[g.qubit()].back());
        continue;
      }
      push(g);
    } else if (g.kind == GateKind::CX) {
      const auto tc = top(g.control());
      const auto tt = top(g.target());
      if (tc && tt && *tc == *tt && out[*tc] == g) {
        kill(*tc);
        continue;
      }
      push(g);
    } else {
      push(g);
    }
  }

  std::vector<Gate> result;
  result.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (alive[i]) result.push_back(out[i]);
  }
  gates = std::move(result);
  return changed;
}

}  // namespace

Layout choose_layout(const Circuit& circuit, const BackendModel& backend,
                     std::optional<std::uint64_t> seed) {
  if (circuit.num_qubits() > backend.num_physical()) {
    throw std::invalid_argument("circuit does not fit backend");
  }
  std::vector<Qubit> physical(backend.num_physical());
  std::iota(physical.begin(), physical.end(), Qubit{0});
  if (seed) {
    SplitMix64 rng(*seed);
    for (std::size_t i = physical.size() - 1; i > 0; --i) {
      std::swap(physical[i], physical[rng.next() % (i + 1)]);
    }
  }
  physical.resize(circuit.num_qubits());
  return physical;
}

RoutingResult route(const Circuit& circuit, const BackendModel& backend,
                    const Layout& layout) {
  if (layout.size() != circuit.num_qubits()) {
    throw std::invalid_argument("layout does not cover the circuit");
  }
  Layout l2p = layout;
  std::vector<Qubit> p2l(backend.num_physical(), kNone);
  for (Qubit l = 0; l < l2p.size(); ++l) {
    if (l2p[l] >= backend.num_physical() || p2l[l2p[l]] != kNone) {
      throw std::invalid_argument("layout is not injective into the backend");
    }
    p2l[l2p[l]] = l;
  }

  std::vector<Gate> out;
  std::vector<Edge> swaps;
  auto do_swap = [&](Qubit u, Qubit v) {
    out.push_back(Gate::swap(u, v));
    swaps.emplace_back(u, v);
    std::swap(p2l[u], p2l[v]);
    if (p2l[u] != kNone) l2p[p2l[u]] = u;
    if (p2l[v] != kNone) l2p[p2l[v]] = v;
  };

  for (const auto& gate : circuit) {
    Gate g = gate;
    if (g.num_qubits() == 1) {
      g.qubits[0] = l2p[g.qubits[0]];
      out.push_back(g);
      continue;
    }
    const Qubit p = l2p[g.qubits[0]];
    const Qubit q = l2p[g.qubits[1]];
    if (!backend.coupled(p, q)) {
      const auto path = shortest_path(backend, p, q);
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        do_swap(path[i], path[i + 1]);
      }
    }
    g.qubits = {l2p[gate.qubits[0]], l2p[gate.qubits[1]]};
    out.push_back(g);
  }
  return {Circuit(backend.num_physical(), std::move(out), circuit.num_symbols()),
          std::move(l2p), std::move(swaps)};
}

Circuit decompose_to_native(const Circuit& circuit, const BackendModel& backend) {
  const bool has_zsx = backend.is_native(GateKind::RZ) &&
                       backend.is_native(GateKind::SX);
  std::vector<Gate> out;
  out.reserve(circuit.size() * 3);
  for (const auto& g : circuit) {
    if (backend.is_native(g.kind)) {
      out.push_back(g);
      continue;
    }
    if (g.kind == GateKind::SWAP && backend.is_native(GateKind::CX)) {
      const Qubit a = g.qubits[0];
      const Qubit b = g.qubits[1];
      out.push_back(Gate::cx(a, b));
      out.push_back(Gate::cx(b, a));
      out.push_back(Gate::cx(a, b));
      continue;
    }
    if (g.num_qubits() == 1 && has_zsx) {
      const auto [theta, phi, lambda] = euler_angles(g);
      const Qubit q = g.qubit();
      emit_rz(out, q, ParamExpr::constant(lambda));
      out.push_back(Gate::sx(q));
      emit_rz(out, q, theta.shifted(kPi));
      out.push_back(Gate::sx(q));
      emit_rz(out, q, ParamExpr::constant(phi + kPi));
      continue;
    }
    throw std::invalid_argument("unsupported gate kind " +
                                std::string(to_string(g.kind)) +
                                " for the backend native set");
  }
  return Circuit(circuit.num_qubits(), std::move(out), circuit.num_symbols());
}

Circuit optimize(const Circuit& circuit) {
  std::vector<Gate> gates = circuit.gates();
  while (peephole_pass(circuit.num_qubits(), circuit.num_symbols(), gates)) {
  }
  return Circuit(circuit.num_qubits(), std::move(gates), circuit.num_symbols());
}

std::vector<std::string> constraint_violations(const Circuit& circuit,
                                               const BackendModel& backend) {
  std::vector<std::string> violations;
  if (circuit.num_qubits() > backend.num_physical()) {
    violations.push_back("register larger than backend");
    return violations;
  }
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate& g = circuit.gates()[i];
    const std::string where = "gate " + std::to_string(i) + " (" +
                              std::string(to_string(g.kind)) + ")";
    if (!backend.is_native(g.kind)) violations.push_back(where + ": not native");
    if (g.num_qubits() == 2 && !backend.coupled(g.qubits[0], g.qubits[1])) {
      violations.push_back(where + ": qubits " + std::to_string(g.qubits[0]) +
                           "," + std::to_string(g.qubits[1]) + " not coupled");
    }
  }
  return violations;
}

TranspiledCircuit transpile(const Circuit& logical, const BackendModel& backend,
                            const TranspileOptions& options) {
  const Layout initial = choose_layout(logical, backend, options.layout_seed);
  auto routed = route(logical, backend, initial);
  Circuit native = decompose_to_native(routed.circuit, backend);
  if (options.optimize) native = optimize(native);

  ParamProvenance provenance;
  std::vector<Gate> gates = native.gates();
  for (auto& g : gates) {
    if (!g.param) continue;
    const ParamExpr& p = *g.param;
    if (p.is_affine()) {
      provenance.emplace_back(FromLogical{p.symbol(), p.coeff(), p.offset()});
    } else {
      provenance.emplace_back(Synthesized{p.offset()});
    }
    g.param = ParamExpr::affine(provenance.size() - 1);
  }
  Circuit physical(backend.num_physical(), std::move(gates), provenance.size());

  const auto violations = constraint_violations(physical, backend);
  if (!violations.empty()) {
    throw std::logic_error("transpiled circuit violates backend: " +
                           violations.front());
  }

  TranspiledCircuit t{std::move(physical),
                      initial,
                      std::move(routed.final_layout),
                      std::move(provenance),
                      structural_metrics(logical),
                      {},
                      std::move(routed.swaps)};
  t.metrics_after = structural_metrics(t.physical);
  return t;
}

std::vector<double> bind_provenance(const ParamProvenance& provenance,
                                    std::span<const double> theta) {
  std::vector<double> out;
  out.reserve(provenance.size());
  for (const auto& origin : provenance) {
    if (const auto* f = std::get_if<FromLogical>(&origin)) {
      if (f->symbol >= theta.size()) {
        throw std::invalid_argument("parameter count mismatch");
      }
      out.push_back(f->coeff * theta[f->symbol] + f->offset);
    } else {
      out.push_back(std::get<Synthesized>(origin).value);
    }
  }
  return out;
}

Layout apply_swaps(const Layout& initial, std::span<const Edge> swaps,
                   std::size_t num_physical) {
  std::vector<Qubit> p2l(num_physical, kNone);
  for (Qubit l = 0; l < initial.size(); ++l) p2l[initial[l]] = l;
  for (auto [u, v] : swaps) std::swap(p2l[u], p2l[v]);
  Layout result(initial.size());
  for (Qubit p = 0; p < num_physical; ++p) {
    if (p2l[p] != kNone) result[p2l[p]] = p;
  }
  return result;
}

OverheadReport overhead(const Circuit& logical, const TranspiledCircuit& t,
                        std::size_t reps) {
  const auto before = structural_metrics(logical);
  const auto& after = t.metrics_after;
  auto diff = [](std::size_t a, std::size_t b) {
    return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
  };
  return {diff(after.g1q, before.g1q), diff(after.g2q, before.g2q),
          diff(after.dag_depth, before.dag_depth), diff(after.dag_depth, reps)};
}

Qubit CompactCircuit::compact_index(Qubit physical) const {
  const auto it = std::lower_bound(physical_of.begin(), physical_of.end(), physical);
  if (it == physical_of.end() || *it != physical) {
    throw std::out_of_range("physical qubit " + std::to_string(physical) +
                            " is not in the active register");
  }
  return static_cast<Qubit>(it - physical_of.begin());
}

CompactCircuit compact(const Circuit& physical, const Layout& initial_layout) {
  std::vector<bool> active(physical.num_qubits(), false);
  for (Qubit p : initial_layout) active.at(p) = true;
  for (const auto& g : physical) {
    for (std::size_t i = 0; i < g.num_qubits(); ++i) active[g.qubits[i]] = true;
  }
  CompactCircuit result{Circuit(0), {}};
  std::vector<Qubit> index(physical.num_qubits(), kNone);
  for (Qubit p = 0; p < physical.num_qubits(); ++p) {
    if (active[p]) {
      index[p] = result.physical_of.size();
      result.physical_of.push_back(p);
    }
  }
  std::vector<Gate> gates = physical.gates();
  for (auto& g : gates) {
    for (std::size_t i = 0; i < g.num_qubits(); ++i) g.qubits[i] = index[g.qubits[i]];
  }
  result.circuit =
      Circuit(result.physical_of.size(), std::move(gates), physical.num_symbols());
  return result;
}

std::string provenance_to_json(const ParamProvenance& provenance) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < provenance.size(); ++k) {
    const auto& origin = provenance[k];
    if (const auto* f = std::get_if<FromLogical>(&origin)) {
      doc[std::to_string(k)] = {{"kind", "logical"},
                                {"sym", f->symbol},
                                {"coeff", f->coeff},
                                {"offset", f->offset}};
    } else {
      doc[std::to_string(k)] = {{"kind", "const"},
                                {"value", std::get<Synthesized>(origin).value}};
    }
  }
  return doc.dump(2) + "\n";
}

ParamProvenance provenance_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  ParamProvenance provenance(doc.size(), Synthesized{0.0});
  std::vector<bool> seen(doc.size(), false);
  for (const auto& [key, entry] : doc.items()) {
    const std::size_t k = std::stoul(key);
    if (k >= provenance.size() || seen[k]) {
      throw std::runtime_error("provenance symbol ids must be 0..P-1");
    }
    seen[k] = true;
    const auto kind = entry.at("kind").get<std::string>();
    if (kind == "logical") {
      const int coeff = entry.at("coeff").get<int>();
      if (coeff != 1 && coeff != -1) {
        throw std::runtime_error("provenance coeff must be +1 or -1");
      }
      provenance[k] = FromLogical{entry.at("sym").get<SymbolId>(), coeff,
                                  entry.at("offset").get<double>()};
    } else if (kind == "const") {
      provenance[k] = Synthesized{entry.at("value").get<double>()};
    } else {
      throw std::runtime_error("unknown provenance kind '" + kind + "'");
    }
  }
  return provenance;
}

}  // namespace vqclab
