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

// stripforge: netlist -> stripboard layout pipeline.
//
// Exit codes: 0 ok, 1 verification failed, 2 unreadable or invalid input, 3 infeasible,
// 4 time limit reached, 5 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "stripforge/stripforge.hpp"

namespace fs = std::filesystem;
namespace sf = stripforge;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kInfeasible = 3, kTimeout = 4, kInternal = 5 };

// Input that cannot be read or does not make sense; maps to exit code 2.
class InputError : public sf::Error {
 public:
  using sf::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sf::Error("cannot write " + path);
  out << text;
  if (!out.flush()) throw sf::Error("cannot write " + path);
}

sf::Circuit read_ir(const std::string& path) {
  try {
    return sf::json_to_circuit(read_file(path));
  } catch (const sf::SchemaError& e) {
    throw InputError(path + ": " + e.what());
  }
}

sf::LayoutFile read_layout(const std::string& path) {
  try {
    return sf::layout_from_json(read_file(path));
  } catch (const sf::SchemaError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Flags sit on top of the environment, which sits on top of the config file.
struct Layers {
  std::string config_path;
  sf::config::Settings flags;

  [[nodiscard]] sf::config::Settings resolve() const {
    sf::config::Settings s;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("STRIPFORGE_CONFIG")) path = env;
    }
    if (!path.empty()) s.overlay(sf::config::settings_from_table(sf::config::parse_toml(read_file(path), path), path));
    s.overlay(sf::config::settings_from_env([](const char* n) { return std::getenv(n); }));
    s.overlay(flags);
    return s;
  }
};

sf::SolveConfig solve_config(const sf::config::Settings& s) {
  sf::SolveConfig cfg;
  if (s.mode) cfg.mode = sf::solve_mode_from_string(*s.mode);
  if (s.grid) {
    auto [r, c] = sf::config::parse_grid(*s.grid);
    cfg.grid = {r, c};
  }
  if (s.time_limit) {
    if (*s.time_limit <= 0) throw std::invalid_argument("time limit must be positive");
    cfg.time_limit = *s.time_limit;
  }
  if (s.unsigned_span) cfg.unsigned_span = *s.unsigned_span;
  if (s.resistor_span) {
    if (*s.resistor_span < 0) throw std::invalid_argument("resistor span must be non-negative");
    cfg.min_span[sf::ComponentKind::resistor] = static_cast<int>(*s.resistor_span);
  }
  return cfg;
}

sf::RenderOptions render_options(const sf::config::Settings& s) {
  sf::RenderOptions o;
  if (s.format) o.format = sf::render_format_from_string(*s.format);
  if (s.cell_size) o.cell_size = static_cast<int>(*s.cell_size);
  if (s.show_labels) o.show_labels = *s.show_labels;
  if (s.theme) o.theme = sf::theme_from_string(*s.theme);
  return o;
}

std::string timing_json(const sf::SolveResult& r) {
  nlohmann::ordered_json j;
  j["phase1_s"] = r.phase1_time;
  j["phase2_s"] = r.phase2_time;
  j["total_s"] = r.total_time;
  j["status"] = std::string(sf::to_string(r.status));
  return j.dump() + "\n";
}

int cmd_parse(const std::string& netlist, const std::string& out) {
  sf::Circuit c = sf::parse_netlist(read_file(netlist));
  write_output(out, sf::circuit_to_json(c) + "\n");
  return kOk;
}

int cmd_solve(const std::string& ir, const std::string& out, const std::string& timing, const Layers& layers) {
  const sf::Circuit circuit = read_ir(ir);
  const sf::SolveConfig cfg = solve_config(layers.resolve());
  const sf::SolveResult r = sf::solve(circuit, cfg);
  const bool layout_to_stdout = out.empty() || out == "-";
  if (!timing.empty()) {
    write_output(timing, timing_json(r));
  } else if (layout_to_stdout) {
    std::cerr << timing_json(r);
  } else {
    std::cout << timing_json(r);
  }
  if (!r.layout) {
    std::cerr << "stripforge: " << sf::to_string(r.status) << (r.note.empty() ? "" : ": " + r.note) << "\n";
    return r.status == sf::SolveStatus::timeout ? kTimeout : kInfeasible;
  }
  sf::LayoutFile file;
  file.layout = sf::normalize(*r.layout, circuit, cfg.constraints());
  file.layout.cuts = sf::derive_cuts(file.layout, circuit, cfg.constraints());
  if (!file.layout.placements.empty()) file.board = sf::board_extent(file.layout);
  file.objective = sf::objective_tuple(file.layout, circuit);
  write_output(out, sf::layout_to_json(file) + "\n");
  if (r.status == sf::SolveStatus::timeout) {
    std::cerr << "stripforge: time limit reached; wrote the best layout found\n";
    return kTimeout;
  }
  return kOk;
}

int cmd_verify(const std::string& ir, const std::string& layout_path) {
  const sf::Circuit circuit = read_ir(ir);
  const sf::LayoutFile file = read_layout(layout_path);
  const sf::VerificationReport report = sf::verify(circuit, file.layout, file.board);
  std::cout << sf::report_to_json(report).dump(2) << "\n";
  return report.overall ? kOk : kVerifyFailed;
}

int cmd_render(const std::string& ir, const std::string& layout_path, const std::string& out, const Layers& layers) {
  const sf::Circuit circuit = read_ir(ir);
  const sf::LayoutFile file = read_layout(layout_path);
  const sf::RenderOptions options = render_options(layers.resolve());
  try {
    write_output(out, sf::render(file.layout, circuit, file.layout.cuts, options));
  } catch (const sf::RenderError& e) {
    throw InputError(e.what());
  }
  return kOk;
}

int cmd_export_asp(const std::string& ir, const std::string& out) {
  write_output(out, sf::emit_asp_facts(read_ir(ir)));
  return kOk;
}

int cmd_bench(const std::string& dir, const std::string& modes_csv, const std::string& out, const Layers& layers) {
  if (!fs::is_directory(dir)) throw InputError(dir + " is not a directory");
  std::vector<sf::SolveMode> modes;
  std::stringstream ss(modes_csv);
  for (std::string m; std::getline(ss, m, ',');) {
    if (!m.empty()) modes.push_back(sf::solve_mode_from_string(m));
  }
  if (modes.empty()) throw std::invalid_argument("no solve modes given");
  const sf::SolveConfig base = solve_config(layers.resolve());
  std::vector<sf::BenchRecord> records;
  for (const auto& path : sf::bench_fixtures(dir)) {
    sf::Circuit circuit;
    try {
      circuit = sf::load_circuit(path);
    } catch (const sf::ParseError& e) {
      throw InputError(path.string() + ": " + e.what());
    } catch (const sf::SemanticError& e) {
      throw InputError(path.string() + ": " + e.what());
    } catch (const sf::SchemaError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    for (sf::SolveMode m : modes) {
      sf::SolveConfig cfg = base;
      cfg.mode = m;
      records.push_back(sf::bench_one(path.stem().string(), circuit, cfg));
      std::cerr << sf::to_csv_row(records.back()) << "\n";
    }
  }
  write_output(out, sf::to_csv(records));
  if (auto bad = sf::mode_mismatches(records); !bad.empty()) {
    for (const auto& name : bad) std::cerr << "stripforge: modes disagree on the optimum for " << name << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stripboard layout synthesis: netlist in, optimal strip layout out.\n"
               "Coordinates are 1-based: normalised layouts start at strip 1, position 1."};
  app.require_subcommand(1);
  Layers layers;
  app.add_option("--config", layers.config_path, "TOML config file (also STRIPFORGE_CONFIG)");

  std::string in1, in2, out, timing, modes = "two_phase,one_phase";
  sf::config::Settings& f = layers.flags;

  auto* parse = app.add_subcommand("parse", "Parse a KiCad netlist into circuit IR JSON");
  parse->add_option("netlist", in1, "KiCad S-expression netlist")->required();
  parse->add_option("-o,--out", out, "Output file (default stdout)");

  auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", f.mode, "two_phase or one_phase");
    cmd->add_option("--grid", f.grid, "Grid as STRIPSxPOSITIONS, default 30x50");
    cmd->add_option("--time-limit", f.time_limit, "Seconds before giving up with the best layout so far");
    cmd->add_flag("--unsigned-span{true}", f.unsigned_span, "Let resistors face either way (|P2-P1| >= span)");
    cmd->add_option("--resistor-span", f.resistor_span, "Minimum resistor pin span in holes, default 3");
  };

  auto* solve = app.add_subcommand("solve", "Find an optimal layout for circuit IR");
  solve->add_option("ir", in1, "Circuit IR JSON")->required();
  solve->add_option("-o,--out", out, "Layout JSON output (default stdout)");
  solve->add_option("--timing", timing, "Write the timing record here instead of stdout/stderr");
  add_solve_flags(solve);

  auto* verify = app.add_subcommand("verify", "Check a layout against its circuit");
  verify->add_option("ir", in1, "Circuit IR JSON")->required();
  verify->add_option("layout", in2, "Layout JSON")->required();

  auto* render = app.add_subcommand("render", "Draw a normalised layout as SVG or ASCII");
  render->add_option("ir", in1, "Circuit IR JSON")->required();
  render->add_option("layout", in2, "Layout JSON")->required();
  render->add_option("-o,--out", out, "Output file (default stdout)");
  render->add_option("--format", f.format, "svg or ascii");
  render->add_option("--cell-size", f.cell_size, "SVG pixels per hole, at least 8");
  render->add_option("--theme", f.theme, "light or dark");
  render->add_flag("--labels{true},--no-labels{false}", f.show_labels, "Component labels / ASCII legend");

  auto* asp = app.add_subcommand("export-asp", "Write the circuit as ASP facts");
  asp->add_option("ir", in1, "Circuit IR JSON")->required();
  asp->add_option("-o,--out", out, "Output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Solve every fixture in a directory and report CSV");
  bench->add_option("fixture_dir", in1, "Directory of *.net netlists or *.json IR files")->required();
  bench->add_option("--modes", modes, "Comma-separated solve modes");
  bench->add_option("-o,--out", out, "CSV output (default stdout)");
  add_solve_flags(bench);
  bench->remove_option(bench->get_option("--mode"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*parse) return cmd_parse(in1, out);
    if (*solve) return cmd_solve(in1, out, timing, layers);
    if (*verify) return cmd_verify(in1, in2);
    if (*render) return cmd_render(in1, in2, out, layers);
    if (*asp) return cmd_export_asp(in1, out);
    if (*bench) return cmd_bench(in1, modes, out, layers);
  } catch (const sf::ParseError& e) {
    std::cerr << in1 << ":" << e.what() << "\n";
    return kBadInput;
  } catch (const sf::SemanticError& e) {
    std::cerr << in1 << ": " << e.what() << "\n";
    return kBadInput;
  } catch (const InputError& e) {
    std::cerr << "stripforge: " << e.what() << "\n";
    return kBadInput;
  } catch (const sf::config::ConfigError& e) {
    std::cerr << "stripforge: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "stripforge: " << e.what() << "\n";
    return kBadInput;
  } catch (const sf::InfeasibleLayoutError& e) {
    std::cerr << "stripforge: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "stripforge: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
