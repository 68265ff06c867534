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

#ifndef STRIPFORGE_SOLVER_HPP_
#define STRIPFORGE_SOLVER_HPP_

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "circuit.hpp"
#include "constraints.hpp"
#include "errors.hpp"
#include "layout.hpp"
#include "position_search.hpp"
#include "propagator.hpp"
#include "search_problem.hpp"

namespace stripforge {

enum class SolveMode { two_phase, one_phase };

enum class SolveStatus { optimal, feasible_only, infeasible, timeout };

[[nodiscard]] inline std::string_view to_string(SolveMode m) {
  return m == SolveMode::two_phase ? "two_phase" : "one_phase";
}

[[nodiscard]] inline SolveMode solve_mode_from_string(std::string_view s) {
  if (s == "two_phase") return SolveMode::two_phase;
  if (s == "one_phase") return SolveMode::one_phase;
  throw std::invalid_argument("unknown solve mode '" + std::string(s) + "'");
}

[[nodiscard]] inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_only: return "feasible_only";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

struct SolveConfig {
  GridConfig grid;
  SolveMode mode = SolveMode::two_phase;
  std::optional<double> time_limit;  // seconds for the whole solve
  bool unsigned_span = false;
  std::map<ComponentKind, int> min_span{{ComponentKind::resistor, 3}};
  std::uint64_t phase1_node_limit = 20000;
  // Called with every strictly better incumbent, tagged "phase1" or "phase2".
  std::function<void(const ObjectiveTuple&, std::string_view)> on_incumbent;

  [[nodiscard]] ConstraintConfig constraints() const { return {min_span, unsigned_span}; }
};

struct SolveStats {
  std::uint64_t phase1_nodes = 0;
  std::uint64_t strip_nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t boxes = 0;
  std::uint64_t position_nodes = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Layout> layout;
  std::optional<ObjectiveTuple> objective;
  double phase1_time = 0.0;
  double phase2_time = 0.0;
  double total_time = 0.0;
  std::string note;
  SolveStats stats;
};

namespace detail {

// Branch and bound over strip assignments of linked groups.
//
// Each leaf fixes total strip distance exactly; its best box is then found by asking
// PositionSearch about candidate boxes in (area, width) order. With `first_only` the search
// stops at the first feasible layout and only the largest box is tried.
class StripSearch {
 public:
  StripSearch(const SearchProblem& pb, const Deadline& deadline, SolveStats& stats, bool first_only,
              std::optional<ObjectiveTuple> incumbent,
              std::function<void(const ObjectiveTuple&, std::string_view)> hook, std::string_view tag)
      : pb_(pb), deadline_(deadline), stats_(stats), first_only_(first_only), incumbent_(incumbent), hook_(std::move(hook)),
        tag_(tag) {
    const int ng = static_cast<int>(pb.size.size());
    strip_.assign(ng, kUnset);
    off_ = pb.grid.max_strips;
    load_.assign(2 * off_ + 1, 0);
    open_links_ = static_cast<int>(pb.model.links.size());
  }

  // Returns false on timeout.
  bool run() {
    if (pb_.strip_order.empty()) {
      evaluate_leaf();
    } else {
      dfs(0);
    }
    return !timed_out_;
  }

  [[nodiscard]] const std::optional<Layout>& best() const { return best_; }
  [[nodiscard]] const std::optional<ObjectiveTuple>& incumbent() const { return incumbent_; }

 private:
  static constexpr int kUnset = INT_MIN;

  [[nodiscard]] int ceil_div(long long a, long long b) const { return static_cast<int>((a + b - 1) / b); }

  [[nodiscard]] int length_floor(int width, int load_length) const {
    return std::max({load_length, pb_.min_length, ceil_div(pb_.demand, width) - 1});
  }

  [[nodiscard]] bool beats(const ObjectiveTuple& t) const { return !incumbent_ || t < *incumbent_; }

  // Some box of width >= w_lb could still beat the incumbent.
  [[nodiscard]] bool promising(long long td_lb, int w_lb, int load_length) const {
    if (incumbent_ && td_lb > incumbent_->total_strip_distance) return false;
    for (int w = w_lb; w <= pb_.grid.max_strips; ++w) {
      const int len = length_floor(w, load_length);
      if (len > pb_.grid.max_positions) continue;
      if (first_only_) return true;
      if (beats({td_lb, static_cast<long long>(w) * len, w})) return true;
    }
    return false;
  }

  void dfs(std::size_t depth) {
    if (done_) return;
    ++stats_.strip_nodes;
    if (deadline_.expired()) {
      timed_out_ = done_ = true;
      return;
    }
    if (depth == pb_.strip_order.size()) {
      evaluate_leaf();
      return;
    }
    const int g = pb_.strip_order[depth];
    const int max_w = pb_.grid.max_strips;
    int lo = 0;
    int hi = 0;
    if (depth > 0) {
      lo = max_ - max_w + 1;
      hi = min_ + max_w - 1;
      if (all_zero_) lo = std::max(lo, 0);  // mirror image of an earlier branch
    }
    struct Cand {
      int strip;
      int gain;
      int width;
    };
    std::vector<Cand> cands;
    for (int s = lo; s <= hi; ++s) {
      int gain = 0;
      bool clash = false;
      for (auto [o, li] : pb_.adj[g]) {
        if (strip_[o] == kUnset) continue;
        if (strip_[o] == s) clash = true;
        gain += std::abs(strip_[o] - s);
      }
      if (clash) continue;
      const int w = depth == 0 ? 1 : std::max(max_, s) - std::min(min_, s) + 1;
      cands.push_back({s, gain, w});
    }
    std::ranges::stable_sort(cands, [](const Cand& a, const Cand& b) {
      if (a.gain != b.gain) return a.gain < b.gain;
      return a.width < b.width;
    });
    for (const Cand& c : cands) {
      place(g, c.strip, depth == 0);
      long long td_lb = td_ + open_links_;
      int load_length = 0;
      for (int s = min_; s <= max_; ++s) load_length = std::max(load_length, load_[s + off_] - 1);
      if (promising(td_lb, max_ - min_ + 1, load_length)) dfs(depth + 1);
      unplace(g);
      if (done_) return;
    }
  }

  void place(int g, int s, bool first) {
    saved_.push_back({min_, max_, all_zero_ ? 1 : 0});
    strip_[g] = s;
    if (first) {
      min_ = max_ = s;
    } else {
      min_ = std::min(min_, s);
      max_ = std::max(max_, s);
    }
    all_zero_ = all_zero_ && s == 0;
    load_[s + off_] += pb_.size[g] + 1;
    for (auto [o, li] : pb_.adj[g]) {
      if (strip_[o] == kUnset || o == g) continue;
      td_ += std::abs(strip_[o] - s);
      --open_links_;
    }
  }

  void unplace(int g) {
    const int s = strip_[g];
    for (auto [o, li] : pb_.adj[g]) {
      if (strip_[o] == kUnset || o == g) continue;
      td_ -= std::abs(strip_[o] - s);
      ++open_links_;
    }
    load_[s + off_] -= pb_.size[g] + 1;
    strip_[g] = kUnset;
    auto [mn, mx, z] = saved_.back();
    saved_.pop_back();
    min_ = mn;
    max_ = mx;
    all_zero_ = z != 0;
  }

  void evaluate_leaf() {
    ++stats_.leaves;
    const int ng = static_cast<int>(pb_.size.size());
    std::vector<int> rows(ng, 0);
    int width = 0;
    int load_length = 0;
    if (!pb_.strip_order.empty()) {
      for (int g = 0; g < ng; ++g) {
        if (strip_[g] != kUnset) rows[g] = strip_[g] - min_ + 1;
      }
      width = max_ - min_ + 1;
      for (int s = min_; s <= max_; ++s) load_length = std::max(load_length, load_[s + off_] - 1);
    }
    const long long td = td_;

    struct Box {
      int width;
      int length;
    };
    std::vector<Box> boxes;
    const int max_w = pb_.grid.max_strips;
    const int max_l = pb_.grid.max_positions;
    for (int w = std::max(1, width); w <= max_w; ++w) {
      const int floor = length_floor(w, load_length);
      if (first_only_) {
        if (floor <= max_l) boxes.push_back({max_w, max_l});
        break;
      }
      for (int l = floor; l <= max_l; ++l) {
        if (!beats({td, static_cast<long long>(w) * l, w})) break;
        boxes.push_back({w, l});
      }
    }
    std::ranges::stable_sort(boxes, [](const Box& a, const Box& b) {
      const long long aa = static_cast<long long>(a.width) * a.length;
      const long long bb = static_cast<long long>(b.width) * b.length;
      if (aa != bb) return aa < bb;
      return a.width < b.width;
    });

    int dead_length = 0;  // linked groups do not fit in any length up to this
    for (const Box& box : boxes) {
      if (box.length <= dead_length) continue;
      ++stats_.boxes;
      PositionSearch ps(pb_, rows, box.width, box.length, deadline_);
      auto outcome = ps.run();
      stats_.position_nodes += ps.nodes();
      if (outcome == PositionSearch::Outcome::timeout) {
        timed_out_ = done_ = true;
        return;
      }
      if (outcome == PositionSearch::Outcome::linked_infeasible) {
        dead_length = std::max(dead_length, box.length);
        continue;
      }
      if (outcome == PositionSearch::Outcome::packing_infeasible) continue;
      Layout found = ps.layout();
      ObjectiveTuple t = objective_tuple(found, *pb_.circuit);
      if (!beats(t)) continue;
      incumbent_ = t;
      best_ = std::move(found);
      if (hook_) hook_(t, tag_);
      if (first_only_) done_ = true;
      return;
    }
  }

  const SearchProblem& pb_;
  const Deadline& deadline_;
  SolveStats& stats_;
  bool first_only_;
  std::optional<ObjectiveTuple> incumbent_;
  std::optional<Layout> best_;
  std::function<void(const ObjectiveTuple&, std::string_view)> hook_;
  std::string_view tag_;

  std::vector<int> strip_;
  std::vector<int> load_;
  int off_ = 0;
  int min_ = 0;
  int max_ = 0;
  bool all_zero_ = true;
  long long td_ = 0;
  int open_links_ = 0;
  std::vector<std::tuple<int, int, int>> saved_;
  bool timed_out_ = false;
  bool done_ = false;
};

// Depth-first search over single pin placements with forward checking. The next pin is the
// one with the fewest remaining holes; holes are tried strip-major in ascending order.
class PinSearch {
 public:
  enum class Outcome { found, infeasible, budget, timeout };

  PinSearch(const Circuit& circuit, const SolveConfig& cfg, const Deadline& deadline)
      : circuit_(circuit), root_(circuit, cfg.grid, cfg.constraints()), deadline_(deadline),
        limit_(cfg.phase1_node_limit) {
    const auto& model = root_.model();
    // Components touching more nets go first; pins in ascending order.
    std::vector<int> weight(circuit.components.size(), 0);
    for (const auto& p : model.pins) {
      if (model.groups[p.group].net_id != 0) ++weight[p.component];
    }
    std::vector<int> order(model.pins.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](int a, int b) {
      return weight[model.pins[a].component] > weight[model.pins[b].component];
    });
    rank_.assign(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) rank_[order[i]] = static_cast<int>(i);
  }

  Outcome run() {
    outcome_ = Outcome::infeasible;
    dfs(root_);
    return outcome_;
  }

  [[nodiscard]] const Layout& layout() const { return layout_; }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  bool dfs(const Propagator& state) {
    int best = -1;
    std::size_t best_count = 0;
    for (int q = 0; q < static_cast<int>(state.pin_count()); ++q) {
      if (state.placement(q)) continue;
      std::size_t c = state.domain(q).count();
      if (best < 0 || c < best_count || (c == best_count && rank_[q] < rank_[best])) {
        best = q;
        best_count = c;
      }
    }
    if (best < 0) {
      layout_ = state.layout();
      outcome_ = Outcome::found;
      return true;
    }
    for (Hole h : state.domain(best).holes()) {
      if (++nodes_ > limit_) {
        outcome_ = Outcome::budget;
        return true;
      }
      if (deadline_.expired()) {
        outcome_ = Outcome::timeout;
        return true;
      }
      Propagator next = state;
      if (!next.assign(best, h).ok()) continue;
      if (dfs(next)) return true;
    }
    return false;
  }

  const Circuit& circuit_;
  Propagator root_;
  const Deadline& deadline_;
  std::uint64_t limit_;
  std::vector<int> rank_;
  Layout layout_;
  Outcome outcome_ = Outcome::infeasible;
  std::uint64_t nodes_ = 0;
};

[[nodiscard]] inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

namespace detail {

[[nodiscard]] inline SolveResult phase1(const Circuit& circuit, const SolveConfig& cfg, const Deadline& deadline) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  detail::SearchProblem pb(circuit, cfg.constraints(), cfg.grid);
  if (!pb.infeasible_reason.empty()) {
    r.status = SolveStatus::infeasible;
    r.note = pb.infeasible_reason;
  } else {
    detail::PinSearch pins(circuit, cfg, deadline);
    auto outcome = pins.run();
    r.stats.phase1_nodes = pins.nodes();
    if (outcome == detail::PinSearch::Outcome::found) {
      r.layout = pins.layout();
      r.status = SolveStatus::feasible_only;
    } else if (outcome == detail::PinSearch::Outcome::infeasible) {
      r.status = SolveStatus::infeasible;
      r.note = "no placement satisfies the hard constraints";
    } else if (outcome == detail::PinSearch::Outcome::timeout) {
      r.status = SolveStatus::timeout;
    } else {
      detail::StripSearch strips(pb, deadline, r.stats, true, std::nullopt, nullptr, "phase1");
      bool finished = strips.run();
      if (strips.best()) {
        r.layout = strips.best();
        r.status = SolveStatus::feasible_only;
      } else if (finished) {
        r.status = SolveStatus::infeasible;
        r.note = "no placement satisfies the hard constraints";
      } else {
        r.status = SolveStatus::timeout;
      }
    }
  }
  if (r.layout) {
    r.objective = objective_tuple(*r.layout, circuit);
    if (cfg.on_incumbent) cfg.on_incumbent(*r.objective, "phase1");
  }
  r.phase1_time = detail::seconds_since(t0);
  return r;
}

[[nodiscard]] inline SolveResult phase2(const Circuit& circuit, const SolveConfig& cfg, const Deadline& deadline,
                                       std::optional<Layout> incumbent) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r;
  detail::SearchProblem pb(circuit, cfg.constraints(), cfg.grid);
  if (!pb.infeasible_reason.empty()) {
    r.status = SolveStatus::infeasible;
    r.note = pb.infeasible_reason;
    r.phase2_time = detail::seconds_since(t0);
    return r;
  }
  std::optional<ObjectiveTuple> bound;
  if (incumbent) bound = objective_tuple(*incumbent, circuit);
  detail::StripSearch search(pb, deadline, r.stats, false, bound, cfg.on_incumbent, "phase2");
  const bool finished = search.run();
  if (search.best()) {
    r.layout = search.best();
  } else if (incumbent) {
    r.layout = std::move(incumbent);
  }
  if (r.layout) r.objective = objective_tuple(*r.layout, circuit);
  if (!finished) {
    r.status = SolveStatus::timeout;
  } else {
    r.status = r.layout ? SolveStatus::optimal : SolveStatus::infeasible;
    if (!r.layout) r.note = "no placement satisfies the hard constraints";
  }
  r.phase2_time = detail::seconds_since(t0);
  return r;
}

}  // namespace detail

// Phase 1: any layout satisfying every hard constraint, without regard to the objective.
[[nodiscard]] inline SolveResult solve_phase1(const Circuit& circuit, const SolveConfig& cfg = {}) {
  detail::Deadline deadline(cfg.time_limit);
  SolveResult r = detail::phase1(circuit, cfg, deadline);
  r.total_time = r.phase1_time;
  return r;
}

// Phase 2: lexicographic minimisation. A feasible `incumbent` seeds the upper bound, so the
// result is never worse than it.
[[nodiscard]] inline SolveResult solve_phase2(const Circuit& circuit, const SolveConfig& cfg = {},
                                              std::optional<Layout> incumbent = std::nullopt) {
  detail::Deadline deadline(cfg.time_limit);
  SolveResult r = detail::phase2(circuit, cfg, deadline, std::move(incumbent));
  r.total_time = r.phase2_time;
  return r;
}

// Finds a layout with the lexicographically smallest objective tuple.
//
// Circuits must be valid (see validate()). The returned layout is anchored at strip 1 and
// position 1 only when it came from phase 2; callers normalise before export. On timeout the
// best layout found so far, if any, is returned with status `timeout`.
[[nodiscard]] inline SolveResult solve(const Circuit& circuit, const SolveConfig& cfg = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.grid.max_strips < 1 || cfg.grid.max_positions < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  detail::Deadline deadline(cfg.time_limit);
  SolveResult r;
  if (circuit.components.empty()) {
    r.status = SolveStatus::optimal;
    r.layout = Layout{cfg.grid, {}, {}};
    r.objective = ObjectiveTuple{};
    r.total_time = detail::seconds_since(t0);
    return r;
  }
  if (cfg.mode == SolveMode::two_phase) {
    SolveResult p1 = detail::phase1(circuit, cfg, deadline);
    if (p1.status == SolveStatus::infeasible || !p1.layout) {
      p1.total_time = detail::seconds_since(t0);
      return p1;
    }
    r = detail::phase2(circuit, cfg, deadline, p1.layout);
    r.phase1_time = p1.phase1_time;
    r.stats.phase1_nodes = p1.stats.phase1_nodes;
    r.stats.strip_nodes += p1.stats.strip_nodes;
    r.stats.leaves += p1.stats.leaves;
    r.stats.boxes += p1.stats.boxes;
    r.stats.position_nodes += p1.stats.position_nodes;
  } else {
    r = detail::phase2(circuit, cfg, deadline, std::nullopt);
  }
  r.total_time = detail::seconds_since(t0);
  return r;
}

}  // namespace stripforge

#endif  // STRIPFORGE_SOLVER_HPP_
