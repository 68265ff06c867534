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

#ifndef STRIPFORGE_MODEL_HPP_
#define STRIPFORGE_MODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "constraints.hpp"

namespace stripforge {

// Index-based view of a circuit used by the propagator and the solver.
//
// A group is a set of pins that must share one strip segment: a net, or a single unwired pin.
// A link is the (pin 1, pin 2) pair of a component with at least two pins; its endpoints must
// lie on different strips and it contributes |strip difference| to the objective.
struct CircuitModel {
  struct Pin {
    PinRef ref;
    std::size_t component = 0;
    int group = 0;
    int partner = -1;  // pin 2 for pin 1 and vice versa; -1 otherwise
  };

  struct Group {
    std::vector<int> pins;
    int net_id = 0;  // 0 for an unwired singleton
    std::string name;
  };

  struct Link {
    int component = 0;
    int pin1 = 0;  // pin indices
    int pin2 = 0;
    int group1 = 0;
    int group2 = 0;
    int span = 0;  // minimum position span, 0 when unconstrained
  };

  std::vector<Pin> pins;
  std::vector<Group> groups;
  std::vector<Link> links;
  std::map<PinRef, int> pin_index;
  bool unsigned_span = false;

  CircuitModel(const Circuit& circuit, const ConstraintConfig& config) : unsigned_span(config.unsigned_span) {
    for (std::size_t c = 0; c < circuit.components.size(); ++c) {
      for (int p = 1; p <= circuit.components[c].pin_count; ++p) {
        pin_index.emplace(PinRef{circuit.components[c].ref, p}, static_cast<int>(pins.size()));
        pins.push_back({{circuit.components[c].ref, p}, c, -1, -1});
      }
    }
    for (const auto& n : circuit.nets) {
      Group g{{}, n.id, n.name};
      for (const auto& m : n.members) {
        int i = pin_index.at(m);
        pins[i].group = static_cast<int>(groups.size());
        g.pins.push_back(i);
      }
      groups.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < pins.size(); ++i) {
      if (pins[i].group >= 0) continue;
      pins[i].group = static_cast<int>(groups.size());
      groups.push_back({{static_cast<int>(i)}, 0, pins[i].ref.ref + "." + std::to_string(pins[i].ref.pin)});
    }
    for (std::size_t c = 0; c < circuit.components.size(); ++c) {
      const auto& comp = circuit.components[c];
      if (comp.pin_count < 2) continue;
      int a = pin_index.at({comp.ref, 1});
      int b = pin_index.at({comp.ref, 2});
      pins[a].partner = b;
      pins[b].partner = a;
      links.push_back({static_cast<int>(c), a, b, pins[a].group, pins[b].group, config.span_for(comp.kind)});
    }
  }

  [[nodiscard]] const Link* link_of(int pin) const {
    for (const auto& l : links) {
      if (l.pin1 == pin || l.pin2 == pin) return &l;
    }
    return nullptr;
  }
};

}  // namespace stripforge

#endif  // STRIPFORGE_MODEL_HPP_
