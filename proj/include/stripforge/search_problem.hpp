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

#ifndef STRIPFORGE_SEARCH_PROBLEM_HPP_
#define STRIPFORGE_SEARCH_PROBLEM_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "constraints.hpp"
#include "layout.hpp"
#include "model.hpp"

namespace stripforge::detail {

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::optional<double> seconds) {
    if (seconds) {
      active_ = true;
      end_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(*seconds));
    }
  }

  [[nodiscard]] bool expired() const {
    if (!active_) return false;
    if (!fired_ && (++tick_ & 15U) == 0) fired_ = std::chrono::steady_clock::now() >= end_;
    return fired_;
  }

  // Forces a clock read; used at phase boundaries.
  [[nodiscard]] bool expired_now() const {
    if (active_ && !fired_) fired_ = std::chrono::steady_clock::now() >= end_;
    return fired_;
  }

 private:
  bool active_ = false;
  std::chrono::steady_clock::time_point end_{};
  mutable std::uint32_t tick_ = 0;
  mutable bool fired_ = false;
};

// Group-level view of the placement problem shared by both search levels.
//
// Linked groups (endpoints of some component's pin-1/pin-2 link) get their strips from the
// strip search; isolated groups have no strip constraints and are packed into leftover room.
// Coupled pins are link endpoints under a span rule; they are the only pins whose positions
// interact across strips.
struct SearchProblem {
  struct SpanLink {
    int pin1 = 0;
    int pin2 = 0;
    int span = 0;
  };

  const Circuit* circuit = nullptr;
  CircuitModel model;
  ConstraintConfig constraints;
  GridConfig grid;

  std::vector<int> size;                            // pins per group
  std::vector<char> linked;                         // group has at least one link
  std::vector<std::vector<std::pair<int, int>>> adj;  // group -> (other group, link index)
  std::vector<std::vector<int>> coupled;            // group -> coupled pins
  std::vector<SpanLink> spans;
  std::vector<int> strip_order;  // linked groups in strip-search order
  std::vector<int> isolated;     // isolated groups, larger first
  long long demand = 0;          // sum over groups of (size + 1)
  int max_group = 0;
  int min_length = 1;            // from span rules and group sizes
  std::string infeasible_reason;  // nonempty when trivially infeasible

  SearchProblem(const Circuit& c, const ConstraintConfig& cfg, GridConfig g)
      : circuit(&c), model(c, cfg), constraints(cfg), grid(g) {
    const int n = static_cast<int>(model.groups.size());
    size.resize(n);
    linked.assign(n, 0);
    adj.resize(n);
    coupled.resize(n);
    for (int i = 0; i < n; ++i) {
      size[i] = static_cast<int>(model.groups[i].pins.size());
      demand += size[i] + 1;
      max_group = std::max(max_group, size[i]);
    }
    min_length = std::max(1, max_group);
    for (int li = 0; li < static_cast<int>(model.links.size()); ++li) {
      const auto& l = model.links[li];
      if (l.group1 == l.group2) {
        infeasible_reason = c.components[l.component].ref + " has pins 1 and 2 on the same net";
      }
      linked[l.group1] = linked[l.group2] = 1;
      adj[l.group1].push_back({l.group2, li});
      adj[l.group2].push_back({l.group1, li});
      if (l.span > 0) {
        spans.push_back({l.pin1, l.pin2, l.span});
        coupled[l.group1].push_back(l.pin1);
        coupled[l.group2].push_back(l.pin2);
        min_length = std::max(min_length, l.span + 1);
      }
    }
    if (static_cast<long long>(model.pins.size()) >
        static_cast<long long>(grid.max_strips) * static_cast<long long>(grid.max_positions)) {
      infeasible_reason = "grid " + std::to_string(grid.max_strips) + "x" + std::to_string(grid.max_positions) +
                          " has fewer holes than the circuit has pins";
    } else if (!model.links.empty() && grid.max_strips < 2) {
      infeasible_reason = "pins 1 and 2 of a component need two distinct strips";
    } else if (min_length > grid.max_positions) {
      infeasible_reason = "a group or span needs more than " + std::to_string(grid.max_positions) + " positions";
    }
    build_orders();
  }

 private:
  // Most-linked group first, then breadth-first through links so every later group of a
  // connected piece has an already-placed neighbour.
  void build_orders() {
    const int n = static_cast<int>(size.size());
    auto degree = [&](int g) { return static_cast<int>(adj[g].size()); };
    std::vector<int> by_degree;
    for (int g = 0; g < n; ++g) {
      if (linked[g]) by_degree.push_back(g);
    }
    std::ranges::stable_sort(by_degree, [&](int a, int b) { return degree(a) > degree(b); });
    std::vector<char> seen(n, 0);
    for (int root : by_degree) {
      if (seen[root]) continue;
      std::vector<int> queue{root};
      seen[root] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        std::vector<int> next;
        for (auto [o, li] : adj[queue[head]]) {
          if (!seen[o]) {
            seen[o] = 1;
            next.push_back(o);
          }
        }
        std::ranges::stable_sort(next, [&](int a, int b) { return degree(a) > degree(b); });
        queue.insert(queue.end(), next.begin(), next.end());
      }
      strip_order.insert(strip_order.end(), queue.begin(), queue.end());
    }
    for (int g = 0; g < n; ++g) {
      if (!linked[g]) isolated.push_back(g);
    }
    std::ranges::stable_sort(isolated, [&](int a, int b) { return size[a] > size[b]; });
  }
};

}  // namespace stripforge::detail

#endif  // STRIPFORGE_SEARCH_PROBLEM_HPP_
