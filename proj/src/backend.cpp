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

#include "vqclab/backend.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vqclab {

using nlohmann::json;

BackendModel::BackendModel(std::size_t num_physical,
                           const std::vector<Edge>& edges,
                           std::set<GateKind> native_1q,
                           std::set<GateKind> native_2q)
    : num_physical_(num_physical), native_1q_(std::move(native_1q)),
      native_2q_(std::move(native_2q)), adjacency_(num_physical) {
  if (num_physical_ == 0) throw std::invalid_argument("empty backend");
  for (auto [a, b] : edges) {
    if (a == b) {
      throw std::invalid_argument("self-loop on qubit " + std::to_string(a));
    }
    if (a >= num_physical_ || b >= num_physical_) {
      throw std::invalid_argument("edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") out of range");
    }
    edges_.insert(std::minmax(a, b));
  }
  for (auto k : native_1q_) {
    if (arity(k) != 1) throw std::invalid_argument("native_1q holds a 2q kind");
  }
  for (auto k : native_2q_) {
    if (arity(k) != 2) throw std::invalid_argument("native_2q holds a 1q kind");
  }
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  std::vector<bool> seen(num_physical_, false);
  std::queue<Qubit> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Qubit v = frontier.front();
    frontier.pop();
    for (Qubit w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != num_physical_) {
    throw std::invalid_argument("disconnected coupling graph");
  }
}

bool BackendModel::coupled(Qubit a, Qubit b) const {
  return edges_.contains(std::minmax(a, b));
}

bool BackendModel::is_native(GateKind kind) const {
  return arity(kind) == 1 ? native_1q_.contains(kind)
                          : native_2q_.contains(kind);
}

BackendModel make_line(std::size_t n) {
  if (n < 2) throw std::invalid_argument("line backend needs n >= 2");
  std::vector<Edge> edges;
  for (Qubit i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return BackendModel(n, edges);
}

BackendModel make_heavy_hex(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 3 || cols % 4 != 3) {
    throw std::invalid_argument(
        "heavy-hex needs rows >= 2, cols >= 3 and cols % 4 == 3");
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      edges.emplace_back(r * cols + c, r * cols + c + 1);
    }
  }
  Qubit next = rows * cols;
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c % 4 != 2 * (r % 2)) continue;
      edges.emplace_back(r * cols + c, next);
      edges.emplace_back(next, (r + 1) * cols + c);
      ++next;
    }
  }
  return BackendModel(next, edges);
}

namespace {

std::set<GateKind> parse_kind_set(const json& arr) {
  std::set<GateKind> kinds;
  for (const auto& name : arr) kinds.insert(parse_gate_kind(name.get<std::string>()));
  return kinds;
}

json kind_set_to_json(const std::set<GateKind>& kinds) {
  json arr = json::array();
  for (auto k : kinds) arr.push_back(std::string(to_string(k)));
  return arr;
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" +
                                std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string backend_to_json(const BackendModel& model) {
  json edges = json::array();
  for (auto [a, b] : model.edges()) edges.push_back({a, b});
  json doc = {{"num_physical", model.num_physical()},
              {"edges", edges},
              {"native_1q", kind_set_to_json(model.native_1q())},
              {"native_2q", kind_set_to_json(model.native_2q())}};
  return doc.dump(2) + "\n";
}

BackendModel backend_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C" in its message.
    throw std::runtime_error(std::string("backend parse error: ") + e.what());
  }
  try {
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (e.size() != 2) throw std::invalid_argument("edge must have 2 endpoints");
      edges.emplace_back(e[0].get<Qubit>(), e[1].get<Qubit>());
    }
    auto native_1q = doc.contains("native_1q") ? parse_kind_set(doc["native_1q"])
                                               : BackendModel::default_native_1q();
    auto native_2q = doc.contains("native_2q") ? parse_kind_set(doc["native_2q"])
                                               : BackendModel::default_native_2q();
    return BackendModel(doc.at("num_physical").get<std::size_t>(), edges,
                        std::move(native_1q), std::move(native_2q));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("backend schema error: ") + e.what());
  }
}

BackendModel load_backend(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return backend_from_json(buf.str());
}

void save_backend(const BackendModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << backend_to_json(model);
}

BackendModel resolve_backend(std::string_view spec) {
  if (spec.starts_with("line:")) {
    return make_line(parse_size(spec.substr(5), "line size"));
  }
  if (spec.starts_with("heavy-hex:")) {
    const auto dims = spec.substr(10);
    const auto comma = dims.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("expected heavy-hex:R,C");
    }
    return make_heavy_hex(parse_size(dims.substr(0, comma), "row count"),
                          parse_size(dims.substr(comma + 1), "column count"));
  }
  return load_backend(std::filesystem::path(std::string(spec)));
}

}  // namespace vqclab
