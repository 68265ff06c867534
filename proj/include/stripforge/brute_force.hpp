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

#ifndef STRIPFORGE_BRUTE_FORCE_HPP_
#define STRIPFORGE_BRUTE_FORCE_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "constraints.hpp"
#include "layout.hpp"
#include "solver.hpp"

namespace stripforge {

// Reference optimiser: tries every injective pin-to-hole assignment, keeps the feasible ones
// anchored at strip 1 and position 1, and returns the lexicographically smallest objective.
// Partial assignments are abandoned as soon as check_all reports a violation among the pins
// placed so far. Throws std::length_error when the raw search space exceeds `limit`.
[[nodiscard]] inline SolveResult brute_force_solve(const Circuit& circuit, const SolveConfig& cfg = {},
                                                   double limit = 1e8) {
  const auto t0 = std::chrono::steady_clock::now();
  const GridConfig grid = cfg.grid;
  std::vector<PinRef> pins = circuit.pins();
  const long long holes = static_cast<long long>(grid.max_strips) * grid.max_positions;
  double space = 1.0;
  for (std::size_t i = 0; i < pins.size(); ++i) space *= static_cast<double>(holes - static_cast<long long>(i));
  if (space > limit) {
    throw std::length_error("brute force space " + std::to_string(space) + " exceeds limit");
  }
  SolveResult result;
  auto finish = [&]() {
    result.status = result.layout ? SolveStatus::optimal : SolveStatus::infeasible;
    result.total_time = detail::seconds_since(t0);
    result.phase2_time = result.total_time;
    return result;
  };
  if (pins.empty()) {
    result.layout = Layout{grid, {}, {}};
    result.objective = ObjectiveTuple{};
    return finish();
  }
  if (static_cast<long long>(pins.size()) > holes) return finish();

  ConstraintChecker checker(circuit, cfg.constraints());
  Layout work{grid, {}, {}};
  std::vector<char> used(static_cast<std::size_t>(holes), 0);

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == pins.size()) {
      int min_strip = grid.max_strips;
      int min_pos = grid.max_positions;
      for (const auto& p : work.placements) {
        min_strip = std::min(min_strip, p.hole.strip);
        min_pos = std::min(min_pos, p.hole.position);
      }
      if (min_strip != 1 || min_pos != 1) return;
      ObjectiveTuple t = objective_tuple(work, circuit);
      if (!result.objective || t < *result.objective) {
        result.objective = t;
        result.layout = work;
      }
      return;
    }
    for (int s = 1; s <= grid.max_strips; ++s) {
      for (int p = 1; p <= grid.max_positions; ++p) {
        const auto idx = static_cast<std::size_t>((s - 1) * grid.max_positions + (p - 1));
        if (used[idx]) continue;
        used[idx] = 1;
        work.placements.push_back({pins[i], {s, p}});
        if (checker.check_all(work).empty()) self(self, i + 1);
        work.placements.pop_back();
        used[idx] = 0;
      }
    }
  };
  recurse(recurse, 0);
  return finish();
}

}  // namespace stripforge

#endif  // STRIPFORGE_BRUTE_FORCE_HPP_
