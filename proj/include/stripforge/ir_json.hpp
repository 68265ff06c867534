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

#ifndef STRIPFORGE_IR_JSON_HPP_
#define STRIPFORGE_IR_JSON_HPP_

#include <string>
#include <string_view>

#include "circuit.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace stripforge {

namespace json_detail {

using nlohmann::json;

inline const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw SchemaError(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing required key");
  return *it;
}

inline std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected string");
  return v.get<std::string>();
}

inline int get_int(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number_integer()) throw SchemaError(path + "/" + key, "expected integer");
  auto value = v.get<long long>();
  if (value < -1'000'000'000LL || value > 1'000'000'000LL) throw SchemaError(path + "/" + key, "integer out of range");
  return static_cast<int>(value);
}

inline const json& get_array(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_array()) throw SchemaError(path + "/" + key, "expected array");
  return v;
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace json_detail

[[nodiscard]] inline nlohmann::json circuit_to_json_value(const Circuit& circuit) {
  using nlohmann::json;
  json comps = json::array();
  for (const auto& c : circuit.components) {
    comps.push_back({{"ref", c.ref}, {"kind", std::string(to_string(c.kind))}, {"value", c.value},
                     {"pin_count", c.pin_count}});
  }
  json nets = json::array();
  for (const auto& n : circuit.nets) {
    json members = json::array();
    for (const auto& m : n.members) members.push_back({{"ref", m.ref}, {"pin", m.pin}});
    nets.push_back({{"id", n.id}, {"name", n.name}, {"members", std::move(members)}});
  }
  return {{"components", std::move(comps)}, {"nets", std::move(nets)}, {"source_name", circuit.source_name}};
}

// Compact, key-sorted JSON. Identical circuits give identical bytes.
[[nodiscard]] inline std::string circuit_to_json(const Circuit& circuit) {
  return circuit_to_json_value(circuit).dump();
}

[[nodiscard]] inline Circuit circuit_from_json_value(const nlohmann::json& doc) {
  using namespace json_detail;
  Circuit circuit;
  circuit.source_name = get_string(doc, "", "source_name");
  const json& comps = get_array(doc, "", "components");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string path = "/components/" + std::to_string(i);
    Component c;
    c.ref = get_string(comps[i], path, "ref");
    std::string kind = get_string(comps[i], path, "kind");
    auto k = kind_from_string(kind);
    if (!k) throw SchemaError(path + "/kind", "unknown component kind '" + kind + "'");
    c.kind = *k;
    c.value = get_string(comps[i], path, "value");
    c.pin_count = get_int(comps[i], path, "pin_count");
    if (c.pin_count < 1) throw SchemaError(path + "/pin_count", "must be >= 1");
    circuit.components.push_back(std::move(c));
  }
  const json& nets = get_array(doc, "", "nets");
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const std::string path = "/nets/" + std::to_string(i);
    Net n;
    n.id = get_int(nets[i], path, "id");
    if (n.id != static_cast<int>(i) + 1) throw SchemaError(path + "/id", "net ids must be dense 1..n in order");
    n.name = get_string(nets[i], path, "name");
    const json& members = get_array(nets[i], path, "members");
    for (std::size_t j = 0; j < members.size(); ++j) {
      const std::string mpath = path + "/members/" + std::to_string(j);
      n.members.push_back({get_string(members[j], mpath, "ref"), get_int(members[j], mpath, "pin")});
    }
    circuit.nets.push_back(std::move(n));
  }
  try {
    validate(circuit);
  } catch (const SemanticError& e) {
    throw SchemaError("", e.what());
  }
  return circuit;
}

[[nodiscard]] inline Circuit json_to_circuit(std::string_view text) {
  return circuit_from_json_value(json_detail::parse_document(text));
}

}  // namespace stripforge

#endif  // STRIPFORGE_IR_JSON_HPP_
