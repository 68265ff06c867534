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

#ifndef STRIPFORGE_CONSTRAINTS_HPP_
#define STRIPFORGE_CONSTRAINTS_HPP_

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "json.hpp"
#include "layout.hpp"

namespace stripforge {

// Minimum pin-1 to pin-2 position span per component kind. Signed by default: pin 2 must sit
// at least `span` positions to the right of pin 1.
struct ConstraintConfig {
  std::map<ComponentKind, int> min_span{{ComponentKind::resistor, 3}};
  bool unsigned_span = false;

  [[nodiscard]] int span_for(ComponentKind kind) const {
    auto it = min_span.find(kind);
    return it == min_span.end() ? 0 : it->second;
  }

  // True when positions (pin1, pin2) of a component of this kind satisfy the span rule.
  [[nodiscard]] bool span_ok(ComponentKind kind, int pos1, int pos2) const {
    int span = span_for(kind);
    if (span <= 0) return true;
    return unsigned_span ? std::abs(pos2 - pos1) >= span : pos2 - pos1 >= span;
  }

  friend bool operator==(const ConstraintConfig&, const ConstraintConfig&) = default;
};

enum class ViolationKind { net_split, hole_conflict, span_too_short, same_strip_component, out_of_bounds, shared_strip_overlap };

[[nodiscard]] inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::net_split: return "net_split";
    case ViolationKind::hole_conflict: return "hole_conflict";
    case ViolationKind::span_too_short: return "span_too_short";
    case ViolationKind::same_strip_component: return "same_strip_component";
    case ViolationKind::out_of_bounds: return "out_of_bounds";
    case ViolationKind::shared_strip_overlap: return "shared_strip_overlap";
  }
  return "unknown";
}

struct ConstraintViolation {
  ViolationKind kind;
  std::vector<PinPlacement> witnesses;
  std::string message;
};

// Precomputed circuit lookups shared by the batch checks. Every pin belongs to exactly one
// electrical group: its net, or a singleton group when it is not wired.
class ConstraintChecker {
 public:
  ConstraintChecker(const Circuit& circuit, ConstraintConfig config = {}) : circuit_(&circuit), config_(std::move(config)) {
    for (std::size_t c = 0; c < circuit.components.size(); ++c) {
      for (int p = 1; p <= circuit.components[c].pin_count; ++p) {
        pin_index_.emplace(PinRef{circuit.components[c].ref, p}, pins_.size());
        pins_.push_back({c, p});
      }
    }
    group_.assign(pins_.size(), -1);
    for (const auto& n : circuit.nets) {
      for (const auto& m : n.members) {
        auto it = pin_index_.find(m);
        if (it != pin_index_.end()) group_[it->second] = n.id - 1;
      }
    }
    int next = static_cast<int>(circuit.nets.size());
    for (auto& g : group_) {
      if (g < 0) g = next++;
    }
  }

  [[nodiscard]] const ConstraintConfig& config() const { return config_; }

  [[nodiscard]] std::vector<ConstraintViolation> check_net_same_strip(const Layout& layout) const {
    std::vector<ConstraintViolation> out;
    auto placed = index(layout);
    for (const auto& n : circuit_->nets) {
      std::vector<PinPlacement> members;
      std::set<int> strips;
      for (const auto& [i, pp] : placed) {
        if (group_[i] == n.id - 1) {
          members.push_back(*pp);
          strips.insert(pp->hole.strip);
        }
      }
      if (strips.size() > 1) {
        std::string s;
        for (int strip : strips) s += (s.empty() ? "" : ", ") + std::to_string(strip);
        out.push_back({ViolationKind::net_split, std::move(members), "net " + n.name + " spans strips " + s});
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<ConstraintViolation> check_hole_exclusivity(const Layout& layout) const {
    std::vector<ConstraintViolation> out;
    std::map<Hole, std::vector<PinPlacement>> by_hole;
    std::map<PinRef, int> seen;
    for (const auto& p : layout.placements) {
      by_hole[p.hole].push_back(p);
      if (++seen[p.pin] == 2) {
        out.push_back({ViolationKind::hole_conflict, {p}, describe(p.pin) + " is placed more than once"});
      }
    }
    for (auto& [hole, pins] : by_hole) {
      if (pins.size() < 2) continue;
      std::string msg = "hole " + describe(hole) + " holds";
      for (const auto& p : pins) msg += " " + describe(p.pin);
      out.push_back({ViolationKind::hole_conflict, std::move(pins), std::move(msg)});
    }
    return out;
  }

  [[nodiscard]] std::vector<ConstraintViolation> check_min_span(const Layout& layout) const {
    std::vector<ConstraintViolation> out;
    for (const auto& c : circuit_->components) {
      int span = config_.span_for(c.kind);
      if (span <= 0 || c.pin_count < 2) continue;
      const Hole* a = layout.find(c.ref, 1);
      const Hole* b = layout.find(c.ref, 2);
      if (a == nullptr || b == nullptr || config_.span_ok(c.kind, a->position, b->position)) continue;
      out.push_back({ViolationKind::span_too_short,
                     {{{c.ref, 1}, *a}, {{c.ref, 2}, *b}},
                     c.ref + " spans positions " + std::to_string(a->position) + " -> " + std::to_string(b->position) +
                         ", needs " + (config_.unsigned_span ? "|P2-P1|" : "P2-P1") + " >= " + std::to_string(span)});
    }
    return out;
  }

  [[nodiscard]] std::vector<ConstraintViolation> check_two_pin_distinct_strips(const Layout& layout) const {
    std::vector<ConstraintViolation> out;
    for (const auto& c : circuit_->components) {
      if (c.pin_count < 2) continue;
      const Hole* a = layout.find(c.ref, 1);
      const Hole* b = layout.find(c.ref, 2);
      if (a == nullptr || b == nullptr || a->strip != b->strip) continue;
      out.push_back({ViolationKind::same_strip_component,
                     {{{c.ref, 1}, *a}, {{c.ref, 2}, *b}},
                     c.ref + " has pins 1 and 2 on strip " + std::to_string(a->strip)});
    }
    return out;
  }

  // Two groups sharing a strip need disjoint position intervals with at least one free hole
  // between them, where the separating cut goes.
  [[nodiscard]] std::vector<ConstraintViolation> check_shared_strip_segments(const Layout& layout) const {
    struct Span {
      int lo = 0;
      int hi = 0;
      std::vector<PinPlacement> pins;
    };
    std::map<std::pair<int, int>, Span> spans;  // (strip, group) -> interval
    for (const auto& [i, pp] : index(layout)) {
      auto key = std::make_pair(pp->hole.strip, group_[i]);
      auto [it, fresh] = spans.try_emplace(key, Span{pp->hole.position, pp->hole.position, {}});
      it->second.lo = std::min(it->second.lo, pp->hole.position);
      it->second.hi = std::max(it->second.hi, pp->hole.position);
      it->second.pins.push_back(*pp);
    }
    std::vector<ConstraintViolation> out;
    for (auto a = spans.begin(); a != spans.end(); ++a) {
      for (auto b = std::next(a); b != spans.end() && b->first.first == a->first.first; ++b) {
        const Span& x = a->second;
        const Span& y = b->second;
        bool separated = x.hi + 1 < y.lo || y.hi + 1 < x.lo;
        if (separated) continue;
        std::vector<PinPlacement> w = x.pins;
        w.insert(w.end(), y.pins.begin(), y.pins.end());
        out.push_back({ViolationKind::shared_strip_overlap, std::move(w),
                       "strip " + std::to_string(a->first.first) + ": " + group_name(a->first.second) + " [" +
                           std::to_string(x.lo) + ".." + std::to_string(x.hi) + "] and " +
                           group_name(b->first.second) + " [" + std::to_string(y.lo) + ".." + std::to_string(y.hi) +
                           "] cannot be separated by a cut"});
      }
    }
    return out;
  }

  // Placements outside the grid or naming pins the circuit does not have.
  [[nodiscard]] std::vector<ConstraintViolation> check_bounds(const Layout& layout) const {
    std::vector<ConstraintViolation> out;
    for (const auto& p : layout.placements) {
      if (!pin_index_.contains(p.pin)) {
        out.push_back({ViolationKind::out_of_bounds, {p}, describe(p.pin) + " is not a pin of the circuit"});
      } else if (p.hole.strip < 1 || p.hole.strip > layout.grid.max_strips || p.hole.position < 1 ||
                 p.hole.position > layout.grid.max_positions) {
        out.push_back({ViolationKind::out_of_bounds, {p},
                       describe(p.pin) + " at " + describe(p.hole) + " is outside the " +
                           std::to_string(layout.grid.max_strips) + "x" + std::to_string(layout.grid.max_positions) +
                           " grid"});
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<ConstraintViolation> check_all(const Layout& layout) const {
    std::vector<ConstraintViolation> out = check_bounds(layout);
    auto append = [&out](std::vector<ConstraintViolation> v) {
      out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    append(check_net_same_strip(layout));
    append(check_hole_exclusivity(layout));
    append(check_min_span(layout));
    append(check_two_pin_distinct_strips(layout));
    append(check_shared_strip_segments(layout));
    return out;
  }

  // Every circuit pin placed exactly once and no foreign pins.
  [[nodiscard]] bool is_total(const Layout& layout) const {
    std::vector<int> count(pins_.size(), 0);
    for (const auto& p : layout.placements) {
      auto it = pin_index_.find(p.pin);
      if (it == pin_index_.end()) return false;
      ++count[it->second];
    }
    return std::ranges::all_of(count, [](int c) { return c == 1; });
  }

  [[nodiscard]] bool feasible(const Layout& layout) const { return is_total(layout) && check_all(layout).empty(); }

  // Group id of a pin (net id - 1 for wired pins), or -1 for unknown pins.
  [[nodiscard]] int group_of(const PinRef& pin) const {
    auto it = pin_index_.find(pin);
    return it == pin_index_.end() ? -1 : group_[it->second];
  }

 private:
  std::vector<std::pair<std::size_t, const PinPlacement*>> index(const Layout& layout) const {
    std::vector<std::pair<std::size_t, const PinPlacement*>> out;
    out.reserve(layout.placements.size());
    for (const auto& p : layout.placements) {
      auto it = pin_index_.find(p.pin);
      if (it != pin_index_.end()) out.emplace_back(it->second, &p);
    }
    return out;
  }

  std::string group_name(int group) const {
    if (group < static_cast<int>(circuit_->nets.size())) return "net " + circuit_->nets[group].name;
    for (std::size_t i = 0; i < pins_.size(); ++i) {
      if (group_[i] == group) return "unwired " + describe(PinRef{circuit_->components[pins_[i].first].ref, pins_[i].second});
    }
    return "group " + std::to_string(group);
  }

  static std::string describe(const PinRef& p) { return p.ref + "." + std::to_string(p.pin); }
  static std::string describe(const Hole& h) {
    return "(" + std::to_string(h.strip) + "," + std::to_string(h.position) + ")";
  }

  const Circuit* circuit_;
  ConstraintConfig config_;
  std::vector<std::pair<std::size_t, int>> pins_;  // (component index, pin number)
  std::map<PinRef, std::size_t> pin_index_;
  std::vector<int> group_;
};

[[nodiscard]] inline std::vector<ConstraintViolation> check_net_same_strip(const Circuit& c, const Layout& l) {
  return ConstraintChecker(c).check_net_same_strip(l);
}
[[nodiscard]] inline std::vector<ConstraintViolation> check_hole_exclusivity(const Circuit& c, const Layout& l) {
  return ConstraintChecker(c).check_hole_exclusivity(l);
}
[[nodiscard]] inline std::vector<ConstraintViolation> check_min_span(const Circuit& c, const Layout& l,
                                                                     const ConstraintConfig& cfg = {}) {
  return ConstraintChecker(c, cfg).check_min_span(l);
}
[[nodiscard]] inline std::vector<ConstraintViolation> check_two_pin_distinct_strips(const Circuit& c, const Layout& l) {
  return ConstraintChecker(c).check_two_pin_distinct_strips(l);
}
[[nodiscard]] inline std::vector<ConstraintViolation> check_shared_strip_segments(const Circuit& c, const Layout& l) {
  return ConstraintChecker(c).check_shared_strip_segments(l);
}
[[nodiscard]] inline std::vector<ConstraintViolation> check_all(const Circuit& c, const Layout& l,
                                                                const ConstraintConfig& cfg = {}) {
  return ConstraintChecker(c, cfg).check_all(l);
}

[[nodiscard]] inline nlohmann::json violations_to_json(const std::vector<ConstraintViolation>& violations) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : violations) {
    nlohmann::json refs = nlohmann::json::array(), pins = nlohmann::json::array(), strips = nlohmann::json::array(),
                   positions = nlohmann::json::array();
    for (const auto& w : v.witnesses) {
      refs.push_back(w.pin.ref);
      pins.push_back(w.pin.pin);
      strips.push_back(w.hole.strip);
      positions.push_back(w.hole.position);
    }
    out.push_back({{"kind", std::string(to_string(v.kind))},
                   {"refs", std::move(refs)},
                   {"pins", std::move(pins)},
                   {"strips", std::move(strips)},
                   {"positions", std::move(positions)},
                   {"message", v.message}});
  }
  return out;
}

}  // namespace stripforge

#endif  // STRIPFORGE_CONSTRAINTS_HPP_
