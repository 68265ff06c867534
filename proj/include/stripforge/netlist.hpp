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

#ifndef STRIPFORGE_NETLIST_HPP_
#define STRIPFORGE_NETLIST_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "sexpr.hpp"

namespace stripforge {

namespace detail {

inline std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline std::string where(const sexpr::Node& n) {
  return " (line " + std::to_string(n.line) + ")";
}

inline const std::string* scalar(const sexpr::Node& n, std::string_view name) {
  const sexpr::Node* v = n.value_of(name);
  return v == nullptr ? nullptr : &v->text;
}

}  // namespace detail

// Kind from the alphabetic reference prefix (KiCad designator convention). D parts whose value
// or footprint mentions LED are LEDs.
[[nodiscard]] inline ComponentKind infer_kind(std::string_view ref, std::string_view value = {},
                                             std::string_view footprint = {}) {
  std::string prefix;
  for (char c : ref) {
    if (!std::isalpha(static_cast<unsigned char>(c))) break;
    prefix.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (prefix == "R") return ComponentKind::resistor;
  if (prefix == "C") return ComponentKind::capacitor;
  if (prefix == "L") return ComponentKind::inductor;
  if (prefix == "D") {
    bool led = detail::upper(value).find("LED") != std::string::npos ||
               detail::upper(footprint).find("LED") != std::string::npos;
    return led ? ComponentKind::led : ComponentKind::diode;
  }
  if (prefix == "Q") return ComponentKind::transistor;
  if (prefix == "U") return ComponentKind::ic;
  if (prefix == "J" || prefix == "P") return ComponentKind::connector;
  return ComponentKind::other;
}

// Parses the `(export (components ...) (nets ...))` subset of a KiCad netlist. Sections other
// than `design`, `components` and `nets` are skipped. Nets without nodes are dropped; the rest
// receive dense ids in file order.
[[nodiscard]] inline Circuit parse_netlist(std::string_view text) {
  const sexpr::Node root = sexpr::parse(text);
  if (root.head() != "export") throw ParseError("expected (export ...) at top level", root.line, root.column);

  Circuit circuit;
  if (const sexpr::Node* design = root.child("design")) {
    if (const std::string* src = detail::scalar(*design, "source")) circuit.source_name = *src;
  }

  std::map<std::string, std::size_t, std::less<>> index;
  if (const sexpr::Node* comps = root.child("components")) {
    for (const auto& comp : comps->children) {
      if (comp.head() != "comp") continue;
      const std::string* ref = detail::scalar(comp, "ref");
      if (ref == nullptr || ref->empty()) throw SemanticError("component without (ref ...)" + detail::where(comp));
      if (index.contains(*ref)) throw SemanticError("duplicate component reference " + *ref + detail::where(comp));
      const std::string* value = detail::scalar(comp, "value");
      const std::string* footprint = detail::scalar(comp, "footprint");
      Component c;
      c.ref = *ref;
      c.value = value ? *value : std::string{};
      c.kind = infer_kind(c.ref, c.value, footprint ? std::string_view(*footprint) : std::string_view{});
      index.emplace(c.ref, circuit.components.size());
      circuit.components.push_back(std::move(c));
    }
  }

  std::set<PinRef> wired;
  std::vector<int> max_pin(circuit.components.size(), 0);
  if (const sexpr::Node* nets = root.child("nets")) {
    for (const auto& net : nets->children) {
      if (net.head() != "net") continue;
      Net n;
      if (const std::string* name = detail::scalar(net, "name")) {
        n.name = *name;
      } else if (const std::string* code = detail::scalar(net, "code")) {
        n.name = *code;
      }
      for (const auto& node : net.children) {
        if (node.head() != "node") continue;
        const std::string* ref = detail::scalar(node, "ref");
        const std::string* pin = detail::scalar(node, "pin");
        if (ref == nullptr || pin == nullptr) {
          throw SemanticError("net " + n.name + ": node without ref/pin" + detail::where(node));
        }
        auto it = index.find(*ref);
        if (it == index.end()) {
          throw SemanticError("net " + n.name + " references unknown component " + *ref + detail::where(node));
        }
        int number = 0;
        auto [end, ec] = std::from_chars(pin->data(), pin->data() + pin->size(), number);
        if (ec != std::errc{} || end != pin->data() + pin->size() || number < 1) {
          throw SemanticError("net " + n.name + ": pin '" + *pin + "' of " + *ref + " is not a positive integer" +
                              detail::where(node));
        }
        PinRef member{*ref, number};
        if (!wired.insert(member).second) {
          throw SemanticError(*ref + " pin " + *pin + " is connected to more than one net" + detail::where(node));
        }
        max_pin[it->second] = std::max(max_pin[it->second], number);
        n.members.push_back(std::move(member));
      }
      if (n.members.empty()) continue;
      n.id = static_cast<int>(circuit.nets.size()) + 1;
      circuit.nets.push_back(std::move(n));
    }
  }
  for (std::size_t i = 0; i < circuit.components.size(); ++i) {
    circuit.components[i].pin_count = std::max(1, max_pin[i]);
  }
  return circuit;
}

}  // namespace stripforge

#endif  // STRIPFORGE_NETLIST_HPP_
