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

#include "vqclab/circuit_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vqclab {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_count(std::string_view s, std::size_t line) {
  std::size_t value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    fail(line, "expected non-negative integer, got '" + std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s, std::size_t line) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) {
    fail(line, "expected number, got '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

ParamExpr parse_param(std::string_view s, std::size_t line) {
  const auto parts = split(s, ':');
  if (parts[0] == "const" && parts.size() == 2) {
    return ParamExpr::constant(parse_double(parts[1], line));
  }
  if (parts[0] == "affine" && parts.size() == 4) {
    int coeff = 0;
    if (parts[2] == "+1" || parts[2] == "1") {
      coeff = 1;
    } else if (parts[2] == "-1") {
      coeff = -1;
    } else {
      fail(line, "coefficient must be +1 or -1");
    }
    return ParamExpr::affine(parse_count(parts[1], line), coeff,
                             parse_double(parts[3], line));
  }
  fail(line, "malformed parameter expression '" + std::string(s) + "'");
}

}  // namespace

std::string format_param(const ParamExpr& expr) {
  if (expr.is_const()) return "const:" + format_double(expr.offset());
  return "affine:" + std::to_string(expr.symbol()) + ":" +
         (expr.coeff() > 0 ? "+1" : "-1") + ":" + format_double(expr.offset());
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits:" << circuit.num_qubits()
      << " symbols:" << circuit.num_symbols() << '\n';
  for (const auto& gate : circuit) {
    out << to_string(gate.kind) << ' ' << gate.qubits[0];
    if (gate.num_qubits() == 2) out << ',' << gate.qubits[1];
    if (gate.param) out << ' ' << format_param(*gate.param);
    out << '\n';
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::optional<std::size_t> num_qubits;
  std::size_t num_symbols = 0;
  std::vector<Gate> gates;
  std::size_t line_no = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty() || words[0][0] == '#') continue;

    if (!num_qubits) {
      if (words.size() != 2 || !words[0].starts_with("qubits:") ||
          !words[1].starts_with("symbols:")) {
        fail(line_no, "expected header 'qubits:<n> symbols:<P>'");
      }
      num_qubits = parse_count(std::string_view(words[0]).substr(7), line_no);
      num_symbols = parse_count(std::string_view(words[1]).substr(8), line_no);
      continue;
    }

    if (words.size() < 2 || words.size() > 3) {
      fail(line_no, "expected 'KIND q[,q] [expr]'");
    }
    Gate gate{};
    try {
      gate.kind = parse_gate_kind(words[0]);
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    }
    const auto qubits = split(words[1], ',');
    if (qubits.size() != arity(gate.kind)) {
      fail(line_no, std::string(to_string(gate.kind)) + " expects " +
                        std::to_string(arity(gate.kind)) + " qubit(s)");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      gate.qubits[i] = parse_count(qubits[i], line_no);
    }
    if (words.size() == 3) gate.param = parse_param(words[2], line_no);
    try {
      validate_gate(gate, *num_qubits);
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    }
    gates.push_back(gate);
  }
  if (!num_qubits) throw std::runtime_error("missing circuit header");
  return Circuit(*num_qubits, std::move(gates), num_symbols);
}

Circuit read_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void write_circuit(const Circuit& circuit, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_text(circuit);
}

}  // namespace vqclab
