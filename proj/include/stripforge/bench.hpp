// Copyright 2026 The Stripforge Authors
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

#ifndef STRIPFORGE_BENCH_HPP_
#define STRIPFORGE_BENCH_HPP_

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "ir_json.hpp"
#include "layout.hpp"
#include "netlist.hpp"
#include "postprocess.hpp"
#include "solver.hpp"

namespace stripforge {

// One fixture solved in one mode. Objective fields are empty when no layout was found.
struct BenchRecord {
  std::string name;
  std::size_t components = 0;
  std::size_t nets = 0;
  SolveMode mode = SolveMode::two_phase;
  SolveStatus status = SolveStatus::infeasible;
  std::optional<ObjectiveTuple> objective;
  std::optional<BoardExtent> board;  // after normalisation
  double phase1_s = 0.0;
  double phase2_s = 0.0;
  double total_s = 0.0;
};

inline constexpr std::string_view kBenchHeader = "name,components,nets,mode,status,td,area,width,board,phase1_s,phase2_s,total_s";

namespace detail {

[[nodiscard]] inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

[[nodiscard]] inline std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

[[nodiscard]] inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

[[nodiscard]] inline std::string to_csv_row(const BenchRecord& r) {
  std::string row = detail::csv_field(r.name) + "," + std::to_string(r.components) + "," + std::to_string(r.nets) + "," +
                    std::string(to_string(r.mode)) + "," + std::string(to_string(r.status)) + ",";
  if (r.objective) {
    row += std::to_string(r.objective->total_strip_distance) + "," + std::to_string(r.objective->board_area) + "," +
           std::to_string(r.objective->board_width) + ",";
  } else {
    row += ",,,";
  }
  if (r.board) row += std::to_string(r.board->width) + "x" + std::to_string(r.board->length);
  row += "," + detail::seconds(r.phase1_s) + "," + detail::seconds(r.phase2_s) + "," + detail::seconds(r.total_s);
  return row;
}

[[nodiscard]] inline std::string to_csv(const std::vector<BenchRecord>& records) {
  std::string out(kBenchHeader);
  out += "\n";
  for (const auto& r : records) out += to_csv_row(r) + "\n";
  return out;
}

// Netlists (*.net) and IR documents (*.json) in `dir`, sorted by file name.
[[nodiscard]] inline std::vector<std::filesystem::path> bench_fixtures(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".net" || ext == ".json") out.push_back(entry.path());
  }
  std::ranges::sort(out, [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return out;
}

[[nodiscard]] inline Circuit load_circuit(const std::filesystem::path& p) {
  const std::string text = detail::slurp(p);
  return p.extension() == ".json" ? json_to_circuit(text) : parse_netlist(text);
}

[[nodiscard]] inline BenchRecord bench_one(const std::string& name, const Circuit& circuit, SolveConfig config) {
  BenchRecord r;
  r.name = name;
  r.components = circuit.components.size();
  r.nets = circuit.nets.size();
  r.mode = config.mode;
  SolveResult s = solve(circuit, config);
  r.status = s.status;
  r.phase1_s = s.phase1_time;
  r.phase2_s = s.phase2_time;
  r.total_s = s.total_time;
  if (s.layout) {
    Layout n = normalize(*s.layout, circuit, config.constraints());
    r.objective = objective_tuple(n, circuit);
    if (!n.placements.empty()) r.board = board_extent(n);
  }
  return r;
}

// Every fixture under every mode, fixtures in name order and modes in the order given.
[[nodiscard]] inline std::vector<BenchRecord> run_bench(const std::filesystem::path& dir,
                                                       const std::vector<SolveMode>& modes,
                                                       const SolveConfig& base = {}) {
  std::vector<BenchRecord> out;
  for (const auto& path : bench_fixtures(dir)) {
    const Circuit circuit = load_circuit(path);
    for (SolveMode m : modes) {
      SolveConfig cfg = base;
      cfg.mode = m;
      out.push_back(bench_one(path.stem().string(), circuit, cfg));
    }
  }
  return out;
}

// Names of fixtures whose modes all finished optimal but disagree on the objective tuple.
[[nodiscard]] inline std::vector<std::string> mode_mismatches(const std::vector<BenchRecord>& records) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < records.size();) {
    std::size_t j = i;
    while (j < records.size() && records[j].name == records[i].name) ++j;
    for (std::size_t k = i + 1; k < j; ++k) {
      const auto& a = records[i];
      const auto& b = records[k];
      if (a.status == SolveStatus::optimal && b.status == SolveStatus::optimal && !(a.objective == b.objective)) {
        bad.push_back(a.name);
        break;
      }
    }
    i = j;
  }
  return bad;
}

}  // namespace stripforge

#endif  // STRIPFORGE_BENCH_HPP_
