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

#ifndef STRIPFORGE_PROPAGATOR_HPP_
#define STRIPFORGE_PROPAGATOR_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "constraints.hpp"
#include "layout.hpp"
#include "model.hpp"

namespace stripforge {

// Set of grid holes, indexed strip-major.
class HoleSet {
 public:
  HoleSet() = default;
  HoleSet(GridConfig grid, bool full) : grid_(grid), words_((size() + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full) trim();
  }

  [[nodiscard]] int size() const { return grid_.max_strips * grid_.max_positions; }
  [[nodiscard]] bool contains(Hole h) const {
    if (!in_grid(h)) return false;
    int i = index(h);
    return (words_[i / 64] >> (i % 64)) & 1U;
  }
  void erase(Hole h) {
    if (!in_grid(h)) return;
    int i = index(h);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  void keep_strip(int strip) {
    for (int s = 1; s <= grid_.max_strips; ++s) {
      if (s != strip) erase_strip(s);
    }
  }
  void erase_strip(int strip) {
    for (int p = 1; p <= grid_.max_positions; ++p) erase({strip, p});
  }
  // Removes positions [lo, hi] on one strip.
  void erase_range(int strip, int lo, int hi) {
    for (int p = std::max(lo, 1); p <= std::min(hi, grid_.max_positions); ++p) erase({strip, p});
  }
  [[nodiscard]] bool empty() const {
    return std::ranges::all_of(words_, [](std::uint64_t w) { return w == 0; });
  }
  [[nodiscard]] int count() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }
  HoleSet& operator|=(const HoleSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Holes in ascending (strip, position) order.
  [[nodiscard]] std::vector<Hole> holes() const {
    std::vector<Hole> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int i = static_cast<int>(w * 64) + std::countr_zero(bits);
        out.push_back({i / grid_.max_positions + 1, i % grid_.max_positions + 1});
        bits &= bits - 1;
      }
    }
    return out;
  }

 private:
  [[nodiscard]] bool in_grid(Hole h) const {
    return h.strip >= 1 && h.strip <= grid_.max_strips && h.position >= 1 && h.position <= grid_.max_positions;
  }
  [[nodiscard]] int index(Hole h) const { return (h.strip - 1) * grid_.max_positions + (h.position - 1); }
  void trim() {
    int extra = static_cast<int>(words_.size()) * 64 - size();
    if (extra > 0) words_.back() >>= extra;
  }

  GridConfig grid_;
  std::vector<std::uint64_t> words_;
};

// Incremental form of the hard constraints. `assign` places one pin, reports every violation the
// placement creates against pins already placed (the same conditions check_all tests), and
// prunes the candidate holes of unplaced pins by forward checking. Placing all pins of a circuit
// one by one yields no conflicts exactly when check_all on the finished layout is empty.
//
// Instances are plain values; copy one to branch.
class Propagator {
 public:
  struct Result {
    std::vector<ConstraintViolation> conflicts;
    bool wipeout = false;  // some unplaced pin (or group) has no room left

    [[nodiscard]] bool ok() const { return conflicts.empty() && !wipeout; }
  };

  Propagator(const Circuit& circuit, GridConfig grid, ConstraintConfig config = {})
      : model_(std::make_shared<const CircuitModel>(circuit, config)),
        circuit_(&circuit),
        config_(std::move(config)),
        grid_(grid),
        domains_(model_->pins.size(), HoleSet(grid, true)),
        placed_(model_->pins.size()) {
    for (std::size_t i = 0; i < model_->pins.size(); ++i) prune_static(static_cast<int>(i));
  }

  [[nodiscard]] const CircuitModel& model() const { return *model_; }
  [[nodiscard]] std::size_t pin_count() const { return model_->pins.size(); }
  [[nodiscard]] const HoleSet& domain(int pin) const { return domains_.at(pin); }
  [[nodiscard]] const HoleSet& domain(const PinRef& pin) const { return domain(model_->pin_index.at(pin)); }
  [[nodiscard]] const std::optional<Hole>& placement(int pin) const { return placed_.at(pin); }
  [[nodiscard]] bool complete() const {
    return std::ranges::all_of(placed_, [](const auto& p) { return p.has_value(); });
  }

  Result assign(const PinRef& pin, Hole hole) {
    auto it = model_->pin_index.find(pin);
    if (it == model_->pin_index.end()) throw std::invalid_argument("unknown pin " + pin.ref + "." + std::to_string(pin.pin));
    return assign(it->second, hole);
  }

  Result assign(int pin, Hole hole) {
    if (placed_.at(pin)) throw std::logic_error("pin already placed: " + name(pin));
    Result r;
    r.conflicts = conflicts_of(pin, hole);
    placed_[pin] = hole;
    if (hole.strip < 1 || hole.strip > grid_.max_strips || hole.position < 1 || hole.position > grid_.max_positions) {
      r.wipeout = true;
      return r;
    }
    propagate(pin, hole);
    r.wipeout = has_wipeout();
    return r;
  }

  [[nodiscard]] Layout layout() const {
    Layout l;
    l.grid = grid_;
    for (std::size_t i = 0; i < placed_.size(); ++i) {
      if (placed_[i]) l.placements.push_back({model_->pins[i].ref, *placed_[i]});
    }
    return l;
  }

 private:
  struct Interval {
    int lo = 0;
    int hi = 0;
  };

  std::string name(int pin) const {
    const auto& p = model_->pins[pin].ref;
    return p.ref + "." + std::to_string(p.pin);
  }

  const Component& component_of(int pin) const { return circuit_->components[model_->pins[pin].component]; }

  // Placed interval of `group` on `strip`, if any of its pins sit there.
  std::optional<Interval> interval(int group, int strip) const {
    std::optional<Interval> out;
    for (int q : model_->groups[group].pins) {
      if (!placed_[q] || placed_[q]->strip != strip) continue;
      int x = placed_[q]->position;
      if (!out) {
        out = Interval{x, x};
      } else {
        out->lo = std::min(out->lo, x);
        out->hi = std::max(out->hi, x);
      }
    }
    return out;
  }

  // Pruning that needs no placements: span rules bound pin positions near the grid edges.
  void prune_static(int pin) {
    const auto* link = model_->link_of(pin);
    if (link == nullptr || link->span <= 0 || config_.unsigned_span) return;
    for (int s = 1; s <= grid_.max_strips; ++s) {
      if (pin == link->pin1) domains_[pin].erase_range(s, grid_.max_positions - link->span + 1, grid_.max_positions);
      if (pin == link->pin2) domains_[pin].erase_range(s, 1, link->span);
    }
  }

  std::vector<ConstraintViolation> conflicts_of(int pin, Hole hole) const {
    std::vector<ConstraintViolation> out;
    const PinPlacement self{model_->pins[pin].ref, hole};
    if (hole.strip < 1 || hole.strip > grid_.max_strips || hole.position < 1 || hole.position > grid_.max_positions) {
      out.push_back({ViolationKind::out_of_bounds, {self}, name(pin) + " is outside the grid"});
    }
    std::vector<PinPlacement> sharing{self};
    for (std::size_t q = 0; q < placed_.size(); ++q) {
      if (placed_[q] && *placed_[q] == hole) sharing.push_back({model_->pins[q].ref, hole});
    }
    if (sharing.size() > 1) out.push_back({ViolationKind::hole_conflict, sharing, name(pin) + " lands on an occupied hole"});

    const int group = model_->pins[pin].group;
    if (model_->groups[group].net_id != 0) {
      for (int q : model_->groups[group].pins) {
        if (q != pin && placed_[q] && placed_[q]->strip != hole.strip) {
          out.push_back({ViolationKind::net_split, {self, {model_->pins[q].ref, *placed_[q]}},
                         "net " + model_->groups[group].name + " split across strips"});
          break;
        }
      }
    }

    if (int partner = model_->pins[pin].partner; partner >= 0 && placed_[partner]) {
      const Hole other = *placed_[partner];
      const PinPlacement o{model_->pins[partner].ref, other};
      if (other.strip == hole.strip) {
        out.push_back({ViolationKind::same_strip_component, {self, o}, component_of(pin).ref + " pins 1 and 2 share a strip"});
      }
      bool first = model_->pins[pin].ref.pin == 1;
      int p1 = first ? hole.position : other.position;
      int p2 = first ? other.position : hole.position;
      if (!config_.span_ok(component_of(pin).kind, p1, p2)) {
        out.push_back({ViolationKind::span_too_short, {self, o}, component_of(pin).ref + " span too short"});
      }
    }

    // The group's grown interval must stay separated from every other group on the strip.
    Interval mine{hole.position, hole.position};
    if (auto cur = interval(group, hole.strip)) mine = {std::min(cur->lo, hole.position), std::max(cur->hi, hole.position)};
    for (std::size_t g = 0; g < model_->groups.size(); ++g) {
      if (static_cast<int>(g) == group) continue;
      auto other = interval(static_cast<int>(g), hole.strip);
      if (!other) continue;
      if (mine.hi + 1 < other->lo || other->hi + 1 < mine.lo) continue;
      out.push_back({ViolationKind::shared_strip_overlap, {self},
                     "group " + model_->groups[group].name + " meets group " + model_->groups[g].name + " on strip " +
                         std::to_string(hole.strip)});
    }
    return out;
  }

  void propagate(int pin, Hole hole) {
    const auto& pins = model_->pins;
    const int group = pins[pin].group;
    for (std::size_t q = 0; q < pins.size(); ++q) {
      if (!placed_[q]) domains_[q].erase(hole);
    }
    for (int q : model_->groups[group].pins) {
      if (!placed_[q]) domains_[q].keep_strip(hole.strip);
    }
    if (int partner = pins[pin].partner; partner >= 0 && !placed_[partner]) {
      HoleSet& d = domains_[partner];
      d.erase_strip(hole.strip);
      const Component& c = component_of(pin);
      bool first = pins[pin].ref.pin == 1;
      for (Hole h : d.holes()) {
        int p1 = first ? hole.position : h.position;
        int p2 = first ? h.position : hole.position;
        if (!config_.span_ok(c.kind, p1, p2)) d.erase(h);
      }
    }

    // Segment separation on this strip, both for the group that grew and for its neighbours.
    const int strip = hole.strip;
    const Interval mine = *interval(group, strip);
    for (std::size_t g = 0; g < model_->groups.size(); ++g) {
      if (static_cast<int>(g) == group) continue;
      auto other = interval(static_cast<int>(g), strip);
      for (int q : model_->groups[g].pins) {
        if (placed_[q]) continue;
        if (!other) {
          domains_[q].erase_range(strip, mine.lo - 1, mine.hi + 1);
        } else if (other->hi < mine.lo) {
          domains_[q].erase_range(strip, mine.lo - 1, grid_.max_positions);
        } else if (other->lo > mine.hi) {
          domains_[q].erase_range(strip, 1, mine.hi + 1);
        }
      }
      if (!other) continue;
      for (int q : model_->groups[group].pins) {
        if (placed_[q]) continue;
        if (other->hi < mine.lo) {
          domains_[q].erase_range(strip, 1, other->hi + 1);
        } else if (other->lo > mine.hi) {
          domains_[q].erase_range(strip, other->lo - 1, grid_.max_positions);
        }
      }
    }
  }

  bool has_wipeout() const {
    for (std::size_t g = 0; g < model_->groups.size(); ++g) {
      int open = 0;
      HoleSet room(grid_, false);
      for (int q : model_->groups[g].pins) {
        if (placed_[q]) continue;
        if (domains_[q].empty()) return true;
        ++open;
        room |= domains_[q];
      }
      if (open > 1 && room.count() < open) return true;
    }
    return false;
  }

  std::shared_ptr<const CircuitModel> model_;
  const Circuit* circuit_;
  ConstraintConfig config_;
  GridConfig grid_;
  std::vector<HoleSet> domains_;
  std::vector<std::optional<Hole>> placed_;
};

}  // namespace stripforge

#endif  // STRIPFORGE_PROPAGATOR_HPP_
