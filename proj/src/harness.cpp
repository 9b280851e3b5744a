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

#include "vqclab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vqclab/parallel.hpp"
#include "vqclab/rng.hpp"
#include "vqclab/transpiler.hpp"

namespace vqclab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kCellStride = 1000003;
constexpr std::uint64_t kMetaSeedStride = 0xD1B54A32D192ED03ULL;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t meta_seed(std::uint64_t seed, std::size_t k) {
  return k == 0 ? seed : mix64(seed + k * kMetaSeedStride);
}

struct SideStats {
  double grad_var = 0.0;
  double std_error = 0.0;
};

SideStats measure(const Circuit& circuit, Qubit cost_qubit, std::uint64_t seed,
                  const SweepConfig& config) {
  GradVarianceOptions opts;
  opts.samples = config.samples;
  opts.cost_qubit = cost_qubit;
  opts.engine = config.engine;
  opts.threads = 1;
  if (config.meta_seeds == 1) {
    opts.seed = seed;
    const auto stats = grad_variance(circuit, opts);
    return {stats.grad_var, stats.std_error};
  }
  std::vector<double> values;
  for (std::size_t k = 0; k < config.meta_seeds; ++k) {
    opts.seed = meta_seed(seed, k);
    values.push_back(grad_variance(circuit, opts).grad_var);
  }
  const double K = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= K;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (K - 1) / K)};
}

std::string checkpoint_key(AnsatzKind ansatz, std::size_t n, std::size_t reps,
                           std::uint64_t seed, const SweepConfig& c) {
  std::ostringstream key;
  key << to_string(ansatz) << '|' << n << '|' << reps << '|' << seed << '|'
      << c.samples << '|' << to_string(c.mode) << '|' << to_string(c.engine)
      << '|' << c.backend << '|' << c.meta_seeds;
  return key.str();
}

json metrics_json(const StructuralMetrics& m) {
  return {{"g1q", m.g1q}, {"g2q", m.g2q}, {"depth", m.dag_depth},
          {"symbols", m.num_symbols}};
}

StructuralMetrics metrics_from_json(const json& j) {
  return {j.at("g1q").get<std::size_t>(), j.at("g2q").get<std::size_t>(),
          j.at("depth").get<std::size_t>(), j.at("symbols").get<std::size_t>()};
}

SweepRecord record_from_json(const json& j) {
  SweepRecord r;
  r.ansatz = parse_ansatz_kind(j.at("ansatz").get<std::string>());
  r.n = j.at("n");
  r.reps = j.at("reps");
  r.seed = j.at("seed");
  r.error = j.at("error");
  r.wall_time = j.at("wall_time");
  if (!r.ok()) return r;
  r.p_log = j.at("P_log");
  r.p_phys = j.at("P_phys");
  r.log = metrics_from_json(j.at("log"));
  r.phys = metrics_from_json(j.at("phys"));
  r.delta_g1q = j.at("delta_g1q");
  r.delta_g2q = j.at("delta_g2q");
  r.delta_depth_dag = j.at("delta_depth_dag");
  r.delta_depth_paper = j.at("delta_depth_paper");
  r.gradvar_log = j.at("gradvar_log");
  r.gradvar_phys = j.at("gradvar_phys");
  r.delta_gradvar = j.at("delta_gradvar");
  r.stderr_log = j.at("stderr_log");
  r.stderr_phys = j.at("stderr_phys");
  r.swaps = j.at("swaps");
  return r;
}

std::map<std::string, SweepRecord> load_checkpoint(const SweepConfig& config) {
  std::map<std::string, SweepRecord> done;
  if (config.checkpoint.empty()) return done;
  std::ifstream in(config.checkpoint);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      const auto& key = j.at("key").get_ref<const std::string&>();
      auto record = record_from_json(j);
      // Failed cells are retried.
      if (record.ok()) done[key] = std::move(record);
    } catch (const std::exception&) {
      // A torn final line from an interrupted run is skipped.
    }
  }
  return done;
}

}  // namespace

void SweepConfig::validate() const {
  if (ansatze.empty() || qubits.empty() || reps.empty()) {
    throw std::invalid_argument("sweep lists must be non-empty");
  }
  for (auto n : qubits) {
    if (n < 2) throw std::invalid_argument("qubit counts must be >= 2");
  }
  for (auto l : reps) {
    if (l < 1) throw std::invalid_argument("repetitions must be >= 1");
  }
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  if (meta_seeds < 1) throw std::invalid_argument("meta_seeds must be >= 1");
}

SweepConfig sweep_config_from_json(std::string_view text) {
  const auto doc = json::parse(text);
  if (!doc.is_object()) throw std::invalid_argument("sweep config must be an object");
  SweepConfig c;
  static const std::set<std::string> known = {
      "ansatz", "qubits",  "reps",    "samples",    "base_seed",
      "backend", "mode",   "engine",  "meta_seeds", "out_csv",
      "out_dir", "checkpoint", "threads"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("unknown sweep config key '" + key + "'");
    }
  }
  if (doc.contains("ansatz")) {
    c.ansatze.clear();
    for (const auto& a : doc["ansatz"]) c.ansatze.push_back(parse_ansatz_kind(a.get<std::string>()));
  }
  if (doc.contains("qubits")) c.qubits = doc["qubits"].get<std::vector<std::size_t>>();
  if (doc.contains("reps")) c.reps = doc["reps"].get<std::vector<std::size_t>>();
  if (doc.contains("samples")) c.samples = doc["samples"];
  if (doc.contains("base_seed")) c.base_seed = doc["base_seed"];
  if (doc.contains("backend")) c.backend = doc["backend"];
  if (doc.contains("mode")) c.mode = parse_reparam_mode(doc["mode"].get<std::string>());
  if (doc.contains("engine")) c.engine = parse_gradient_engine(doc["engine"].get<std::string>());
  if (doc.contains("meta_seeds")) c.meta_seeds = doc["meta_seeds"];
  if (doc.contains("out_csv")) c.out_csv = doc["out_csv"];
  if (doc.contains("out_dir")) c.out_dir = doc["out_dir"];
  if (doc.contains("checkpoint")) c.checkpoint = doc["checkpoint"];
  if (doc.contains("threads")) c.threads = doc["threads"];
  c.validate();
  return c;
}

std::string sweep_config_to_json(const SweepConfig& c) {
  ordered_json doc;
  doc["ansatz"] = json::array();
  for (auto a : c.ansatze) doc["ansatz"].push_back(std::string(to_string(a)));
  doc["qubits"] = c.qubits;
  doc["reps"] = c.reps;
  doc["samples"] = c.samples;
  doc["base_seed"] = c.base_seed;
  doc["backend"] = c.backend;
  doc["mode"] = std::string(to_string(c.mode));
  doc["engine"] = std::string(to_string(c.engine));
  doc["meta_seeds"] = c.meta_seeds;
  doc["out_csv"] = c.out_csv;
  doc["out_dir"] = c.out_dir;
  doc["checkpoint"] = c.checkpoint;
  doc["threads"] = c.threads;
  return doc.dump(2) + "\n";
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t cell_index) {
  return base_seed + kCellStride * static_cast<std::uint64_t>(cell_index);
}

SweepRecord run_cell(AnsatzKind ansatz, std::size_t n, std::size_t reps,
                     std::uint64_t seed, const SweepConfig& config,
                     const BackendModel& backend) {
  const auto start = std::chrono::steady_clock::now();
  SweepRecord r;
  r.ansatz = ansatz;
  r.n = n;
  r.reps = reps;
  r.seed = seed;
  try {
    const Circuit logical = build_ansatz(ansatz, n, reps);
    const TranspiledCircuit t = transpile(logical, backend);
    const auto violations = constraint_violations(t.physical, backend);
    if (!violations.empty()) {
      throw std::logic_error("constraint audit failed: " + violations.front());
    }
    const ReparamCircuit phys = reparameterize(t, config.mode);
    const auto report = overhead(logical, t, reps);

    r.p_log = logical.num_symbols();
    r.p_phys = phys.circuit.num_symbols();
    r.log = t.metrics_before;
    r.phys = t.metrics_after;
    r.delta_g1q = report.delta_g1q;
    r.delta_g2q = report.delta_g2q;
    r.delta_depth_dag = report.delta_depth_dag;
    r.delta_depth_paper = report.delta_depth_paper;
    r.swaps = t.swaps.size();

    const auto log_stats = measure(logical, 0, seed, config);
    const auto phys_stats = measure(phys.circuit, phys.cost_qubit, seed, config);
    r.gradvar_log = log_stats.grad_var;
    r.gradvar_phys = phys_stats.grad_var;
    r.stderr_log = log_stats.std_error;
    r.stderr_phys = phys_stats.std_error;
    r.delta_gradvar = r.gradvar_phys - r.gradvar_log;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config,
                                   const ProgressFn& progress) {
  config.validate();
  const BackendModel backend = resolve_backend(config.backend);

  struct Cell {
    AnsatzKind ansatz;
    std::size_t n;
    std::size_t reps;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (auto a : config.ansatze) {
    for (auto n : config.qubits) {
      for (auto l : config.reps) {
        cells.push_back({a, n, l, cell_seed(config.base_seed, cells.size())});
      }
    }
  }

  auto done = load_checkpoint(config);
  std::ofstream checkpoint;
  if (!config.checkpoint.empty()) {
    checkpoint.open(config.checkpoint, std::ios::app);
    if (!checkpoint) throw std::runtime_error("cannot open checkpoint " + config.checkpoint);
  }
  std::mutex io_mutex;

  std::vector<SweepRecord> records(cells.size());
  const std::size_t threads =
      config.threads == 0 ? default_thread_count() : config.threads;
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto key = checkpoint_key(c.ansatz, c.n, c.reps, c.seed, config);
    if (auto it = done.find(key); it != done.end()) {
      records[i] = it->second;
    } else {
      records[i] = run_cell(c.ansatz, c.n, c.reps, c.seed, config, backend);
      if (checkpoint.is_open()) {
        std::lock_guard lock(io_mutex);
        checkpoint << record_to_json_line(records[i], config) << std::flush;
      }
    }
    if (progress) {
      std::lock_guard lock(io_mutex);
      progress(records[i]);
    }
  });
  return records;
}

std::string record_to_json_line(const SweepRecord& r, const SweepConfig& config) {
  ordered_json j;
  j["key"] = checkpoint_key(r.ansatz, r.n, r.reps, r.seed, config);
  j["ansatz"] = std::string(to_string(r.ansatz));
  j["n"] = r.n;
  j["reps"] = r.reps;
  j["seed"] = r.seed;
  j["error"] = r.error;
  j["wall_time"] = r.wall_time;
  if (r.ok()) {
    j["P_log"] = r.p_log;
    j["P_phys"] = r.p_phys;
    j["log"] = metrics_json(r.log);
    j["phys"] = metrics_json(r.phys);
    j["delta_g1q"] = r.delta_g1q;
    j["delta_g2q"] = r.delta_g2q;
    j["delta_depth_dag"] = r.delta_depth_dag;
    j["delta_depth_paper"] = r.delta_depth_paper;
    j["gradvar_log"] = r.gradvar_log;
    j["gradvar_phys"] = r.gradvar_phys;
    j["delta_gradvar"] = r.delta_gradvar;
    j["stderr_log"] = r.stderr_log;
    j["stderr_phys"] = r.stderr_phys;
    j["swaps"] = r.swaps;
  }
  return j.dump() + "\n";
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    if (!r.ok()) continue;
    out << to_string(r.ansatz) << ',' << r.n << ',' << r.reps << ',' << r.p_log
        << ',' << r.p_phys << ',' << r.log.g1q << ',' << r.phys.g1q << ','
        << r.log.g2q << ',' << r.phys.g2q << ',' << r.log.dag_depth << ','
        << r.phys.dag_depth << ',' << r.delta_g1q << ',' << r.delta_g2q << ','
        << r.delta_depth_dag << ',' << r.delta_depth_paper << ','
        << fmt_double(r.gradvar_log) << ',' << fmt_double(r.gradvar_phys) << ','
        << fmt_double(r.delta_gradvar) << ',' << fmt_double(r.stderr_log) << ','
        << fmt_double(r.stderr_phys) << ',' << r.seed << '\n';
  }
  return out.str();
}

std::vector<SweepRecord> records_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("CSV header does not match the sweep schema");
  }
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) f.push_back(cell);
    if (f.size() != 21) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 21 fields");
    }
    SweepRecord r;
    r.ansatz = parse_ansatz_kind(f[0]);
    r.n = std::stoul(f[1]);
    r.reps = std::stoul(f[2]);
    r.p_log = std::stoul(f[3]);
    r.p_phys = std::stoul(f[4]);
    r.log.g1q = std::stoul(f[5]);
    r.phys.g1q = std::stoul(f[6]);
    r.log.g2q = std::stoul(f[7]);
    r.phys.g2q = std::stoul(f[8]);
    r.log.dag_depth = std::stoul(f[9]);
    r.phys.dag_depth = std::stoul(f[10]);
    r.log.num_symbols = r.p_log;
    r.delta_g1q = std::stoll(f[11]);
    r.delta_g2q = std::stoll(f[12]);
    r.delta_depth_dag = std::stoll(f[13]);
    r.delta_depth_paper = std::stoll(f[14]);
    r.gradvar_log = std::stod(f[15]);
    r.gradvar_phys = std::stod(f[16]);
    r.delta_gradvar = std::stod(f[17]);
    r.stderr_log = std::stod(f[18]);
    r.stderr_phys = std::stod(f[19]);
    r.seed = std::stoull(f[20]);
    records.push_back(r);
  }
  return records;
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << records_to_csv(records);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::string diverging_color(double value, double scale) {
  const double t = scale > 0.0 ? std::clamp(value / scale, -1.0, 1.0) : 0.0;
  auto channel = [](double x) {
    return static_cast<int>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
  };
  int r = 255, g = 255, b = 255;
  if (t > 0) {
    g = b = channel(1.0 - t);
  } else if (t < 0) {
    r = g = channel(1.0 + t);
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string heatmap_svg(const std::vector<SweepRecord>& records,
                        AnsatzKind ansatz) {
  std::map<std::pair<std::size_t, std::size_t>, double> grid;
  std::set<std::size_t> ns, ls;
  for (const auto& r : records) {
    if (r.ansatz != ansatz) continue;
    ns.insert(r.n);
    ls.insert(r.reps);
    if (r.ok()) grid[{r.n, r.reps}] = r.delta_gradvar;
  }
  if (ns.empty()) {
    throw std::invalid_argument("no records for " + std::string(to_string(ansatz)));
  }
  std::string missing;
  for (auto n : ns) {
    for (auto l : ls) {
      if (!grid.contains({n, l})) {
        missing += (missing.empty() ? "" : ", ") + std::string("(n=") +
                   std::to_string(n) + ",L=" + std::to_string(l) + ")";
      }
    }
  }
  if (!missing.empty()) {
    throw std::invalid_argument("incomplete heatmap grid for " +
                                std::string(to_string(ansatz)) +
                                "; missing cells: " + missing);
  }

  double scale = 0.0;
  for (const auto& [cell, v] : grid) scale = std::max(scale, std::abs(v));

  constexpr int kCell = 80, kLeft = 70, kTop = 50, kLegend = 90;
  const int width = kLeft + kCell * static_cast<int>(ls.size()) + kLegend;
  const int height = kTop + kCell * static_cast<int>(ns.size()) + 50;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n"
      << "  <title>Delta GradVar (" << to_string(ansatz) << ")</title>\n"
      << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"16\">Delta GradVar: " << to_string(ansatz) << "</text>\n";

  int row = 0;
  for (auto n : ns) {
    const int y = kTop + row * kCell;
    svg << "  <text x=\"" << kLeft - 8 << "\" y=\"" << y + kCell / 2 + 4
        << "\" text-anchor=\"end\" font-size=\"12\">n=" << n << "</text>\n";
    int col = 0;
    for (auto l : ls) {
      const int x = kLeft + col * kCell;
      const double v = grid.at({n, l});
      svg << "  <rect class=\"cell\" x=\"" << x << "\" y=\"" << y
          << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
          << diverging_color(v, scale) << "\" stroke=\"#888888\" data-n=\"" << n
          << "\" data-reps=\"" << l << "\" data-value=\"" << fmt_double(v)
          << "\"/>\n";
      char label[32];
      std::snprintf(label, sizeof(label), "%.2e", v);
      svg << "  <text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
          << "\" text-anchor=\"middle\" font-size=\"11\">" << label << "</text>\n";
      ++col;
    }
    ++row;
  }
  int col = 0;
  const int axis_y = kTop + kCell * static_cast<int>(ns.size()) + 18;
  for (auto l : ls) {
    svg << "  <text x=\"" << kLeft + col * kCell + kCell / 2 << "\" y=\""
        << axis_y << "\" text-anchor=\"middle\" font-size=\"12\">L=" << l
        << "</text>\n";
    ++col;
  }
  svg << "  <text x=\"" << kLeft + kCell * static_cast<int>(ls.size()) / 2
      << "\" y=\"" << axis_y + 20
      << "\" text-anchor=\"middle\" font-size=\"12\">repetitions</text>\n";

  // Legend: blue = suppression, white = 0, red = amplification.
  const int lx = kLeft + kCell * static_cast<int>(ls.size()) + 30;
  const int lh = kCell * static_cast<int>(ns.size());
  svg << "  <defs><linearGradient id=\"scale\" x1=\"0\" y1=\"0\" x2=\"0\" y2=\"1\">"
      << "<stop offset=\"0\" stop-color=\"#ff0000\"/>"
      << "<stop offset=\"0.5\" stop-color=\"#ffffff\"/>"
      << "<stop offset=\"1\" stop-color=\"#0000ff\"/>"
      << "</linearGradient></defs>\n"
      << "  <rect x=\"" << lx << "\" y=\"" << kTop << "\" width=\"16\" height=\""
      << lh << "\" fill=\"url(#scale)\" stroke=\"#888888\"/>\n";
  char hi[32], lo[32];
  std::snprintf(hi, sizeof(hi), "%+.1e", scale);
  std::snprintf(lo, sizeof(lo), "%+.1e", -scale);
  svg << "  <text x=\"" << lx + 20 << "\" y=\"" << kTop + 10
      << "\" font-size=\"10\">" << hi << "</text>\n"
      << "  <text x=\"" << lx + 20 << "\" y=\"" << kTop + lh
      << "\" font-size=\"10\">" << lo << "</text>\n"
      << "</svg>\n";
  return svg.str();
}

void emit_heatmap_svg(const std::vector<SweepRecord>& records,
                      AnsatzKind ansatz, const std::filesystem::path& path) {
  const auto svg = heatmap_svg(records, ansatz);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << svg;
}

}  // namespace vqclab
