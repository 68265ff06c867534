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

#ifndef STRIPFORGE_POSTPROCESS_HPP_
#define STRIPFORGE_POSTPROCESS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "circuit.hpp"
#include "constraints.hpp"
#include "errors.hpp"
#include "layout.hpp"

namespace stripforge {

// Raised by normalize and derive_cuts when their input breaks a hard constraint.
class InfeasibleLayoutError : public Error {
 public:
  explicit InfeasibleLayoutError(std::vector<ConstraintViolation> violations)
      : Error(summary(violations)), violations_(std::move(violations)) {}

  [[nodiscard]] const std::vector<ConstraintViolation>& violations() const { return violations_; }

 private:
  static std::string summary(const std::vector<ConstraintViolation>& v) {
    std::string s = "layout is infeasible (" + std::to_string(v.size()) + " violation" + (v.size() == 1 ? "" : "s") + ")";
    if (!v.empty()) s += ": " + v.front().message;
    return s;
  }

  std::vector<ConstraintViolation> violations_;
};

namespace detail {

inline void require_feasible(const Circuit& circuit, const Layout& layout, const ConstraintConfig& config) {
  ConstraintChecker checker(circuit, config);
  auto v = checker.check_all(layout);
  if (v.empty() && !checker.is_total(layout)) {
    v.push_back({ViolationKind::out_of_bounds, {}, "layout does not place every pin"});
  }
  if (!v.empty()) throw InfeasibleLayoutError(std::move(v));
}

// Strips that lie strictly between the pin-1 and pin-2 strips of some component. Removing one
// would shorten that component's strip distance.
inline std::set<int> crossed_strips(const Circuit& circuit, const Layout& layout) {
  std::set<int> out;
  for (const auto& c : circuit.components) {
    const Hole* a = layout.find(c.ref, 1);
    const Hole* b = layout.find(c.ref, 2);
    if (a == nullptr || b == nullptr) continue;
    for (int s = std::min(a->strip, b->strip) + 1; s < std::max(a->strip, b->strip); ++s) out.insert(s);
  }
  return out;
}

// Whether column x may go: no pin in it, not strictly inside any component's pin-1/pin-2
// span, and not the only hole separating two groups on some strip.
inline bool column_removable(const Circuit& circuit, const Layout& layout, const ConstraintChecker& checker, int x) {
  for (const auto& p : layout.placements) {
    if (p.hole.position == x) return false;
  }
  for (const auto& c : circuit.components) {
    const Hole* a = layout.find(c.ref, 1);
    const Hole* b = layout.find(c.ref, 2);
    if (a == nullptr || b == nullptr) continue;
    if (std::min(a->position, b->position) < x && x < std::max(a->position, b->position)) return false;
  }
  std::map<Hole, int> group_at;
  for (const auto& p : layout.placements) group_at[p.hole] = checker.group_of(p.pin);
  for (const auto& [hole, g] : group_at) {
    if (hole.position != x - 1) continue;
    auto right = group_at.find({hole.strip, x + 1});
    if (right != group_at.end() && right->second != g) return false;
  }
  return true;
}

}  // namespace detail

// Anchors a feasible layout at strip 1, position 1 and squeezes out empty strips and columns.
//
// A strip survives if a component's pins 1 and 2 straddle it, and a column survives if it is
// inside some component's pin-1/pin-2 span or is the lone gap between two groups on a strip.
// Removal repeats until nothing changes, so the result is a fixpoint. Cuts are dropped; derive
// them again with derive_cuts. Throws InfeasibleLayoutError on infeasible input.
[[nodiscard]] inline Layout normalize(const Layout& input, const Circuit& circuit, const ConstraintConfig& config = {}) {
  detail::require_feasible(circuit, input, config);
  Layout out = input;
  out.cuts.clear();
  if (out.placements.empty()) return out;
  ConstraintChecker checker(circuit, config);
  {
    BoardExtent e = board_extent(out);
    out = translated(std::move(out), 1 - e.min_strip, 1 - e.min_position);
  }
  for (;;) {
    BoardExtent e = board_extent(out);
    bool changed = false;
    std::set<int> keep = detail::crossed_strips(circuit, out);
    for (int s = 1; s <= e.max_strip && !changed; ++s) {
      bool empty = std::ranges::none_of(out.placements, [&](const PinPlacement& p) { return p.hole.strip == s; });
      if (!empty || keep.contains(s)) continue;
      for (auto& p : out.placements) {
        if (p.hole.strip > s) --p.hole.strip;
      }
      changed = true;
    }
    for (int x = 1; x <= e.max_position && !changed; ++x) {
      if (!detail::column_removable(circuit, out, checker, x)) continue;
      for (auto& p : out.placements) {
        if (p.hole.position > x) --p.hole.position;
      }
      changed = true;
    }
    if (!changed) break;
  }
  return out;
}

// One cut per gap between consecutive groups on a strip, at the leftmost hole of the gap.
// Throws InfeasibleLayoutError when two groups on a strip cannot be separated.
[[nodiscard]] inline std::vector<Cut> derive_cuts(const Layout& layout, const Circuit& circuit,
                                                  const ConstraintConfig& config = {}) {
  ConstraintChecker checker(circuit, config);
  if (auto v = checker.check_shared_strip_segments(layout); !v.empty()) throw InfeasibleLayoutError(std::move(v));
  // strip -> group -> [lo, hi]
  std::map<int, std::map<int, std::pair<int, int>>> spans;
  for (const auto& p : layout.placements) {
    auto [it, fresh] = spans[p.hole.strip].try_emplace(checker.group_of(p.pin), p.hole.position, p.hole.position);
    if (!fresh) {
      it->second.first = std::min(it->second.first, p.hole.position);
      it->second.second = std::max(it->second.second, p.hole.position);
    }
  }
  std::vector<Cut> cuts;
  for (const auto& [strip, groups] : spans) {
    std::vector<std::pair<int, int>> ivs;
    for (const auto& [g, iv] : groups) ivs.push_back(iv);
    std::ranges::sort(ivs);
    for (std::size_t i = 1; i < ivs.size(); ++i) cuts.push_back({strip, ivs[i - 1].second});
  }
  return cuts;
}

struct VerificationReport {
  struct Evidence {
    std::string check;
    bool ok = true;
    std::vector<std::string> details;
  };

  bool connectivity_ok = false;
  bool pin_placement_ok = false;
  bool dimensions_ok = false;
  bool feasibility_ok = false;
  bool overall = false;
  std::vector<Evidence> evidence;
};

namespace detail {

// Electrical nodes implied by copper alone: pins on one strip join unless a cut lies between.
inline std::set<std::set<PinRef>> reconstruct_nets(const Layout& layout) {
  std::map<int, std::vector<std::pair<int, PinRef>>> by_strip;
  for (const auto& p : layout.placements) by_strip[p.hole.strip].push_back({p.hole.position, p.pin});
  std::map<int, std::vector<int>> cuts;
  for (const auto& c : layout.cuts) cuts[c.strip].push_back(c.after_position);
  std::set<std::set<PinRef>> nets;
  for (auto& [strip, pins] : by_strip) {
    std::ranges::sort(pins);
    auto& cs = cuts[strip];
    std::ranges::sort(cs);
    std::set<PinRef> current;
    int segment = -1;
    for (const auto& [pos, pin] : pins) {
      int seg = static_cast<int>(std::ranges::lower_bound(cs, pos) - cs.begin());
      if (seg != segment && !current.empty()) {
        nets.insert(std::move(current));
        current.clear();
      }
      segment = seg;
      current.insert(pin);
    }
    if (!current.empty()) nets.insert(std::move(current));
  }
  return nets;
}

inline std::string describe(const std::set<PinRef>& pins) {
  std::string s = "{";
  for (const auto& p : pins) {
    if (s.size() > 1) s += ", ";
    s += p.ref + "." + std::to_string(p.pin);
  }
  return s + "}";
}

inline std::string describe(const BoardExtent& e) {
  return std::to_string(e.width) + "x" + std::to_string(e.length) + " at strips " + std::to_string(e.min_strip) + ".." +
         std::to_string(e.max_strip) + ", positions " + std::to_string(e.min_position) + ".." +
         std::to_string(e.max_position);
}

}  // namespace detail

// Independent check of a finished layout. Connectivity is rebuilt from strips and the layout's
// own cuts; nothing from the solver is trusted. A missing claimed extent fails the dimension check.
[[nodiscard]] inline VerificationReport verify(const Circuit& circuit, const Layout& layout,
                                               const std::optional<BoardExtent>& claimed) {
  VerificationReport r;

  VerificationReport::Evidence conn{"connectivity", true, {}};
  std::set<PinRef> placed;
  for (const auto& p : layout.placements) {
    if (!placed.insert(p.pin).second) {
      conn.details.push_back(p.pin.ref + "." + std::to_string(p.pin.pin) + " is placed more than once");
    }
  }
  for (const auto& pin : circuit.pins()) {
    if (!placed.contains(pin)) conn.details.push_back(pin.ref + "." + std::to_string(pin.pin) + " is not placed");
  }
  const auto expected = pin_partition(circuit);
  const auto actual = detail::reconstruct_nets(layout);
  for (const auto& n : actual) {
    if (!expected.contains(n)) conn.details.push_back("copper joins " + detail::describe(n) + " which is not a net");
  }
  for (const auto& n : expected) {
    if (!actual.contains(n)) conn.details.push_back("net " + detail::describe(n) + " is not one copper segment");
  }
  conn.ok = conn.details.empty();

  VerificationReport::Evidence pins{"pin_placement", true, {}};
  for (const auto& c : circuit.components) {
    if (c.pin_count < 2) continue;
    std::set<int> strips;
    int seen = 0;
    for (const auto& p : layout.placements) {
      if (p.pin.ref != c.ref) continue;
      strips.insert(p.hole.strip);
      ++seen;
    }
    if (seen >= 2 && strips.size() == 1) {
      pins.details.push_back(c.ref + " has every pin on strip " + std::to_string(*strips.begin()));
    }
  }
  pins.ok = pins.details.empty();

  VerificationReport::Evidence dims{"dimensions", true, {}};
  std::optional<BoardExtent> actual_extent;
  if (!layout.placements.empty()) actual_extent = board_extent(layout);
  if (!claimed) {
    dims.details.push_back("no claimed board extent");
  } else if (!actual_extent) {
    dims.details.push_back("layout is empty but claims " + detail::describe(*claimed));
  } else if (!(*claimed == *actual_extent)) {
    dims.details.push_back("claimed " + detail::describe(*claimed) + " but pins span " + detail::describe(*actual_extent));
  }
  dims.ok = dims.details.empty();

  VerificationReport::Evidence feas{"feasibility", true, {}};
  std::map<Hole, std::vector<PinRef>> at;
  for (const auto& p : layout.placements) at[p.hole].push_back(p.pin);
  for (const auto& [hole, who] : at) {
    if (who.size() < 2) continue;
    std::set<PinRef> s(who.begin(), who.end());
    feas.details.push_back("hole (" + std::to_string(hole.strip) + ", " + std::to_string(hole.position) +
                           ") holds " + detail::describe(s));
  }
  if (claimed) {
    for (const auto& p : layout.placements) {
      if (p.hole.strip < claimed->min_strip || p.hole.strip > claimed->max_strip ||
          p.hole.position < claimed->min_position || p.hole.position > claimed->max_position) {
        feas.details.push_back(p.pin.ref + "." + std::to_string(p.pin.pin) + " lies outside the claimed board");
      }
    }
  }
  feas.ok = feas.details.empty();

  r.connectivity_ok = conn.ok;
  r.pin_placement_ok = pins.ok;
  r.dimensions_ok = dims.ok;
  r.feasibility_ok = feas.ok;
  r.overall = conn.ok && pins.ok && dims.ok && feas.ok;
  r.evidence = {std::move(conn), std::move(pins), std::move(dims), std::move(feas)};
  return r;
}

[[nodiscard]] inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["connectivity_ok"] = r.connectivity_ok;
  j["pin_placement_ok"] = r.pin_placement_ok;
  j["dimensions_ok"] = r.dimensions_ok;
  j["feasibility_ok"] = r.feasibility_ok;
  j["overall"] = r.overall;
  j["evidence"] = nlohmann::ordered_json::array();
  for (const auto& e : r.evidence) {
    j["evidence"].push_back({{"check", e.check}, {"ok", e.ok}, {"details", e.details}});
  }
  return j;
}

}  // namespace stripforge

#endif  // STRIPFORGE_POSTPROCESS_HPP_
