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

#ifndef STRIPFORGE_CIRCUIT_HPP_
#define STRIPFORGE_CIRCUIT_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace stripforge {

enum class ComponentKind { resistor, capacitor, inductor, diode, led, transistor, ic, connector, other };

inline constexpr std::array<std::pair<ComponentKind, std::string_view>, 9> kComponentKindNames{{
    {ComponentKind::resistor, "resistor"},
    {ComponentKind::capacitor, "capacitor"},
    {ComponentKind::inductor, "inductor"},
    {ComponentKind::diode, "diode"},
    {ComponentKind::led, "led"},
    {ComponentKind::transistor, "transistor"},
    {ComponentKind::ic, "ic"},
    {ComponentKind::connector, "connector"},
    {ComponentKind::other, "other"},
}};

[[nodiscard]] inline std::string_view to_string(ComponentKind kind) {
  for (const auto& [k, name] : kComponentKindNames) {
    if (k == kind) return name;
  }
  return "other";
}

[[nodiscard]] inline std::optional<ComponentKind> kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kComponentKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

struct Component {
  std::string ref;
  ComponentKind kind = ComponentKind::other;
  std::string value;
  int pin_count = 1;

  friend bool operator==(const Component&, const Component&) = default;
};

// One physical pin of one component.
struct PinRef {
  std::string ref;
  int pin = 0;

  friend auto operator<=>(const PinRef&, const PinRef&) = default;
};

// `id` is the dense 1-based NetworkId; `name` keeps the netlist's original label.
struct Net {
  int id = 0;
  std::string name;
  std::vector<PinRef> members;

  friend bool operator==(const Net&, const Net&) = default;
};

struct Circuit {
  std::vector<Component> components;
  std::vector<Net> nets;
  std::string source_name;

  [[nodiscard]] const Component* find(std::string_view ref) const {
    auto it = std::ranges::find(components, ref, &Component::ref);
    return it == components.end() ? nullptr : &*it;
  }

  // Every pin of every component, components in input order and pins ascending.
  [[nodiscard]] std::vector<PinRef> pins() const {
    std::vector<PinRef> out;
    for (const auto& c : components) {
      for (int p = 1; p <= c.pin_count; ++p) out.push_back({c.ref, p});
    }
    return out;
  }

  // Net id of a pin, or nullopt when the pin is not wired to anything.
  [[nodiscard]] std::optional<int> net_of(const PinRef& pin) const {
    for (const auto& n : nets) {
      if (std::ranges::find(n.members, pin) != n.members.end()) return n.id;
    }
    return std::nullopt;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// Throws SemanticError when any Circuit invariant is broken.
inline void validate(const Circuit& circuit) {
  std::map<std::string, int, std::less<>> pin_counts;
  for (const auto& c : circuit.components) {
    if (c.ref.empty()) throw SemanticError("component with empty reference");
    if (c.pin_count < 1) throw SemanticError("component " + c.ref + " has pin_count < 1");
    if (!pin_counts.emplace(c.ref, c.pin_count).second) {
      throw SemanticError("duplicate component reference " + c.ref);
    }
  }
  std::set<PinRef> wired;
  for (std::size_t i = 0; i < circuit.nets.size(); ++i) {
    const auto& net = circuit.nets[i];
    if (net.id != static_cast<int>(i) + 1) {
      throw SemanticError("net " + net.name + " has id " + std::to_string(net.id) + ", expected " +
                          std::to_string(i + 1));
    }
    if (net.members.empty()) throw SemanticError("net " + net.name + " has no members");
    for (const auto& m : net.members) {
      auto it = pin_counts.find(m.ref);
      if (it == pin_counts.end()) {
        throw SemanticError("net " + net.name + " references unknown component " + m.ref);
      }
      if (m.pin < 1 || m.pin > it->second) {
        throw SemanticError("net " + net.name + " references " + m.ref + " pin " + std::to_string(m.pin) +
                            " outside 1.." + std::to_string(it->second));
      }
      if (!wired.insert(m).second) {
        throw SemanticError(m.ref + " pin " + std::to_string(m.pin) + " appears twice (net " + net.name + ")");
      }
    }
  }
}

// Partition of all circuit pins into electrically connected sets: one set per net, plus a
// singleton for every pin not wired to any net.
[[nodiscard]] inline std::set<std::set<PinRef>> pin_partition(const Circuit& circuit) {
  std::set<std::set<PinRef>> parts;
  std::set<PinRef> wired;
  for (const auto& n : circuit.nets) {
    std::set<PinRef> part(n.members.begin(), n.members.end());
    wired.insert(part.begin(), part.end());
    parts.insert(std::move(part));
  }
  for (auto& p : circuit.pins()) {
    if (!wired.contains(p)) parts.insert(std::set<PinRef>{p});
  }
  return parts;
}

}  // namespace stripforge

#endif  // STRIPFORGE_CIRCUIT_HPP_
