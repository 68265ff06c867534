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

#ifndef STRIPFORGE_ASP_HPP_
#define STRIPFORGE_ASP_HPP_

#include <map>
#include <string>
#include <string_view>

#include "circuit.hpp"
#include "errors.hpp"

namespace stripforge {

// Lowercases a reference and maps every character outside [a-z0-9_] to '_'.
[[nodiscard]] inline std::string asp_atom(std::string_view ref) {
  std::string out;
  out.reserve(ref.size());
  for (char c : ref) {
    char l = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    bool safe = (l >= 'a' && l <= 'z') || (l >= '0' && l <= '9') || l == '_';
    out.push_back(safe ? l : '_');
  }
  return out;
}

[[nodiscard]] inline std::string asp_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

// component/3 and pin/2 facts per component in input order, then circuit_net/3 facts per net
// in id order. One fact per line, LF-terminated.
[[nodiscard]] inline std::string emit_asp_facts(const Circuit& circuit) {
  std::map<std::string, std::string> seen;
  std::map<std::string, std::string, std::less<>> atoms;
  for (const auto& c : circuit.components) {
    std::string atom = asp_atom(c.ref);
    if (atom.empty() || atom.front() < 'a' || atom.front() > 'z') {
      throw EmissionError("reference '" + c.ref + "' does not map to an ASP atom (got '" + atom + "')");
    }
    auto [it, fresh] = seen.emplace(atom, c.ref);
    if (!fresh) {
      throw EmissionError("references '" + it->second + "' and '" + c.ref + "' both map to atom '" + atom + "'");
    }
    atoms.emplace(c.ref, std::move(atom));
  }

  std::string out;
  for (const auto& c : circuit.components) {
    const std::string& atom = atoms.find(c.ref)->second;
    out += "component(" + atom + ", " + std::string(to_string(c.kind)) + ", " + asp_string(c.value) + ").\n";
    for (int p = 1; p <= c.pin_count; ++p) out += "pin(" + atom + ", " + std::to_string(p) + ").\n";
  }
  for (const auto& n : circuit.nets) {
    for (const auto& m : n.members) {
      auto it = atoms.find(m.ref);
      if (it == atoms.end()) throw EmissionError("net " + n.name + " references unknown component " + m.ref);
      out += "circuit_net(" + it->second + ", " + std::to_string(m.pin) + ", " + std::to_string(n.id) + ").\n";
    }
  }
  return out;
}

}  // namespace stripforge

#endif  // STRIPFORGE_ASP_HPP_
