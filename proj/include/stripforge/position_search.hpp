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

#ifndef STRIPFORGE_POSITION_SEARCH_HPP_
#define STRIPFORGE_POSITION_SEARCH_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "layout.hpp"
#include "search_problem.hpp"

namespace stripforge::detail {

// Decides whether a fixed strip assignment fits inside a `width` x `length` box.
//
// Positions live in a difference-constraint network: each linked group g owns an interval
// [S_g, E_g], each coupled pin a position P_q inside its group's interval, and every span rule
// is an edge P_2 >= P_1 + span. Branching fixes unsigned span directions, the order of coupled
// pins inside a group, and the left-to-right order of groups on every strip (consecutive
// groups need one empty hole between them). Isolated groups are then packed into the gaps.
// Earliest start times are propagated forward and latest start times backward; a node whose
// window closes is a dead end. The search is complete for the given box.
class PositionSearch {
 public:
  enum class Outcome { found, linked_infeasible, packing_infeasible, timeout };

  PositionSearch(const SearchProblem& pb, std::span<const int> strip_of_group, int width, int length,
                 const Deadline& deadline)
      : pb_(pb), strip_(strip_of_group.begin(), strip_of_group.end()), width_(width), length_(length),
        deadline_(deadline) {
    const int ng = static_cast<int>(pb.size.size());
    node_of_group_.assign(ng, -1);
    int next = 2;
    for (int g = 0; g < ng; ++g) {
      if (!pb.linked[g]) continue;
      node_of_group_[g] = next;
      next += 2;
    }
    node_of_pin_.assign(pb.model.pins.size(), -1);
    for (int g = 0; g < ng; ++g) {
      for (int q : pb.coupled[g]) node_of_pin_[q] = next++;
    }
    out_.resize(next);
    in_.resize(next);
    est_.assign(next, 1);
    lst_.assign(next, length_);
    est_[0] = lst_[0] = 0;
    est_[1] = lst_[1] = length_ + 1;

    slack_ = static_cast<long long>(width_) * (length_ + 1) - pb.demand;
    rows_.resize(width_ + 1);
    for (int g = 0; g < ng; ++g) {
      if (!pb.linked[g]) continue;
      rows_[strip_[g]].push_back(g);
      const int s = start(g);
      const int e = end(g);
      add_edge(s, e, pb.size[g] - 1);
      // Every hole an interval grows beyond its pin count is lost to packing.
      const long long stretch = pb.coupled[g].empty() ? 0 : std::min<long long>(slack_, length_);
      add_edge(e, s, -(pb.size[g] - 1 + static_cast<int>(std::max<long long>(0, stretch))));
      for (int q : pb.coupled[g]) {
        add_edge(s, node_of_pin_[q], 0);
        add_edge(node_of_pin_[q], e, 0);
      }
      add_edge(0, s, 1);
      add_edge(e, 1, 1);
    }
    if (!pb.model.unsigned_span) {
      for (const auto& sl : pb.spans) add_edge(node_of_pin_[sl.pin1], node_of_pin_[sl.pin2], sl.span);
    }
    for (int g = 0; g < ng; ++g) {
      if (pb.coupled[g].size() >= 2) multi_.push_back(g);
    }
    rows_of_ = rows_;
    for (int r = 1; r <= width_; ++r) {
      if (rows_[r].size() >= 2) rank_rows_.push_back(r);
    }
    // Rows with tightly coupled groups first; their order decides the most.
    std::ranges::stable_sort(rank_rows_, [&](int a, int b) {
      auto weight = [&](int r) {
        int w = 0;
        for (int g : rows_[r]) w += static_cast<int>(pb.coupled[g].size());
        return w;
      };
      if (weight(a) != weight(b)) return weight(a) > weight(b);
      return rows_[a].size() > rows_[b].size();
    });
  }

  Outcome run() {
    reached_packing_ = false;
    timed_out_ = false;
    bool ok = slack_ >= 0 && propagate_all() && spans(0);
    if (ok) return Outcome::found;
    if (timed_out_) return Outcome::timeout;
    return reached_packing_ ? Outcome::packing_infeasible : Outcome::linked_infeasible;
  }

  // Valid after run() returned found. Strips are 1..width, positions 1..length.
  [[nodiscard]] Layout layout() const { return result_; }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  struct Edge {
    int from;
    int to;
    int w;
  };
  struct Slot {
    int row;
    int edge;  // -1 for an empty row
    int demand;
    std::vector<int> groups;
  };
  struct Snapshot {
    std::size_t edges;
    std::vector<int> est;
    std::vector<int> lst;
  };

  [[nodiscard]] int start(int g) const { return node_of_group_[g]; }
  [[nodiscard]] int end(int g) const { return node_of_group_[g] + 1; }

  int add_edge(int from, int to, int w) {
    edges_.push_back({from, to, w});
    const int id = static_cast<int>(edges_.size()) - 1;
    out_[from].push_back(id);
    in_[to].push_back(id);
    fwd_.push_back(from);
    bwd_.push_back(to);
    return id;
  }

  Snapshot save() const { return {edges_.size(), est_, lst_}; }

  void restore(Snapshot&& s) {
    while (edges_.size() > s.edges) {
      const Edge& e = edges_.back();
      out_[e.from].pop_back();
      in_[e.to].pop_back();
      edges_.pop_back();
    }
    est_ = std::move(s.est);
    lst_ = std::move(s.lst);
    fwd_.clear();
    bwd_.clear();
  }

  bool propagate_all() {
    for (int v = 0; v < static_cast<int>(est_.size()); ++v) {
      fwd_.push_back(v);
      bwd_.push_back(v);
    }
    return propagate();
  }

  // Pending nodes in fwd_ had their earliest time raised, in bwd_ their latest time lowered.
  bool propagate() {
    bool ok = true;
    while (ok && (!fwd_.empty() || !bwd_.empty())) {
      while (ok && !fwd_.empty()) {
        int v = fwd_.back();
        fwd_.pop_back();
        for (int id : out_[v]) {
          const Edge& e = edges_[id];
          if (est_[v] + e.w > est_[e.to]) {
            est_[e.to] = est_[v] + e.w;
            if (est_[e.to] > lst_[e.to]) {
              ok = false;
              break;
            }
            fwd_.push_back(e.to);
          }
        }
      }
      while (ok && !bwd_.empty()) {
        int v = bwd_.back();
        bwd_.pop_back();
        for (int id : in_[v]) {
          const Edge& e = edges_[id];
          if (lst_[v] - e.w < lst_[e.from]) {
            lst_[e.from] = lst_[v] - e.w;
            if (est_[e.from] > lst_[e.from]) {
              ok = false;
              break;
            }
            bwd_.push_back(e.from);
          }
        }
      }
    }
    fwd_.clear();
    bwd_.clear();
    return ok && stretch_lb() <= slack_;
  }

  // Lower bound on interval length of a linked group, in holes.
  [[nodiscard]] int min_len(int g) const { return std::max(pb_.size[g], est_[end(g)] - lst_[start(g)] + 1); }

  [[nodiscard]] long long stretch_lb() const {
    long long total = 0;
    for (std::size_t g = 0; g < pb_.size.size(); ++g) {
      if (pb_.linked[g]) total += min_len(static_cast<int>(g)) - pb_.size[g];
    }
    return total;
  }

  bool tick() {
    ++nodes_;
    if (deadline_.expired()) timed_out_ = true;
    return !timed_out_;
  }

  // Unsigned span rules: choose which pin sits to the left.
  bool spans(std::size_t i) {
    if (!pb_.model.unsigned_span || i == pb_.spans.size()) return orders(0);
    const auto& sl = pb_.spans[i];
    const int a = node_of_pin_[sl.pin1];
    const int b = node_of_pin_[sl.pin2];
    for (int dir = 0; dir < 2; ++dir) {
      if (!tick()) return false;
      auto snap = save();
      if (dir == 0) {
        add_edge(a, b, sl.span);
      } else {
        add_edge(b, a, sl.span);
      }
      if (propagate() && spans(i + 1)) return true;
      restore(std::move(snap));
      if (timed_out_) return false;
    }
    return false;
  }

  // Coupled pins sharing a group take distinct holes; fix their left-to-right order.
  bool orders(std::size_t i) {
    if (i == multi_.size()) return rank(0);
    std::vector<int> perm = pb_.coupled[multi_[i]];
    std::ranges::sort(perm);
    do {
      if (!tick()) return false;
      auto snap = save();
      for (std::size_t k = 1; k < perm.size(); ++k) add_edge(node_of_pin_[perm[k - 1]], node_of_pin_[perm[k]], 1);
      if (propagate() && orders(i + 1)) return true;
      restore(std::move(snap));
      if (timed_out_) return false;
    } while (std::ranges::next_permutation(perm).found);
    return false;
  }

  // Fix the order of groups on row rank_rows_[i], one leftmost group at a time.
  bool rank(std::size_t i) {
    if (i == rank_rows_.size()) return pack_start();
    const int row = rank_rows_[i];
    auto& open = rows_[row];
    if (open.empty()) return rank(i + 1);
    std::vector<int> cand = open;
    std::ranges::stable_sort(cand, [&](int a, int b) {
      if (est_[start(a)] != est_[start(b)]) return est_[start(a)] < est_[start(b)];
      return lst_[start(a)] < lst_[start(b)];
    });
    for (int y : cand) {
      if (!tick()) return false;
      bool hopeless = false;
      for (int z : open) {
        if (z != y && est_[end(y)] + 2 > lst_[start(z)]) hopeless = true;
      }
      if (hopeless) continue;
      auto snap = save();
      for (int z : open) {
        if (z != y) add_edge(end(y), start(z), 2);
      }
      if (propagate()) {
        std::erase(open, y);
        ranked_[row].push_back(y);
        bool ok = rank(i);
        if (ok) return true;
        ranked_[row].pop_back();
        open.push_back(y);
        std::ranges::sort(open);
      }
      restore(std::move(snap));
      if (timed_out_) return false;
    }
    return false;
  }

  bool pack_start() {
    reached_packing_ = true;
    slots_.clear();
    auto snap = save();
    for (int r = 1; r <= width_; ++r) {
      std::vector<int> seq = ordered_row(r);
      if (seq.empty()) {
        slots_.push_back({r, -1, 0, {}});
        continue;
      }
      slots_.push_back({r, add_edge(0, start(seq.front()), 1), 0, {}});
      for (std::size_t k = 1; k < seq.size(); ++k) {
        slots_.push_back({r, add_edge(end(seq[k - 1]), start(seq[k]), 2), 0, {}});
      }
      slots_.push_back({r, add_edge(end(seq.back()), 1, 1), 0, {}});
    }
    // Non-empty rows first so empty rows act as overflow bins.
    std::ranges::stable_sort(slots_, [](const Slot& a, const Slot& b) { return (a.edge < 0) < (b.edge < 0); });
    // slots of one row stay adjacent; pack() relies on it
    bool ok = propagate() && pack(0, 0);
    if (!ok) restore(std::move(snap));
    return ok;
  }

  std::vector<int> ordered_row(int r) const {
    auto it = ranked_.find(r);
    if (it != ranked_.end()) return it->second;
    return rows_[r];  // zero or one group
  }

  [[nodiscard]] int room(const Slot& s) const {
    if (s.edge < 0) return length_ + 1 - s.demand;
    const Edge& e = edges_[s.edge];
    return lst_[e.to] - est_[e.from] - e.w;
  }

  bool pack(std::size_t i, std::size_t min_slot) {
    if (i == pb_.isolated.size()) {
      materialize();
      return true;
    }
    if (!tick()) return false;
    long long need = 0;
    for (std::size_t k = i; k < pb_.isolated.size(); ++k) need += pb_.size[pb_.isolated[k]] + 1;
    int smallest = pb_.size[pb_.isolated.back()] + 1;
    long long have = 0;
    for (std::size_t a = 0; a < slots_.size();) {
      std::size_t b = a;
      long long rooms = 0;
      long long used = 0;
      while (b < slots_.size() && slots_[b].row == slots_[a].row) {
        const int r = room(slots_[b]);
        if (r >= smallest) rooms += r;
        used += slots_[b].demand;
        ++b;
      }
      long long cap = length_ + 1 - used;
      for (int g : rows_of_[slots_[a].row]) cap -= min_len(g) + 1;
      have += std::min(rooms, cap < smallest ? 0 : cap);
      a = b;
    }
    if (need > have) return false;

    const int g = pb_.isolated[i];
    const int n = pb_.size[g] + 1;
    const bool same_as_prev = i > 0 && pb_.size[pb_.isolated[i - 1]] == pb_.size[g];
    bool tried_blank = false;
    for (std::size_t si = same_as_prev ? min_slot : 0; si < slots_.size(); ++si) {
      Slot& s = slots_[si];
      if (room(s) < n) continue;
      if (s.edge < 0 && s.demand == 0) {
        if (tried_blank) continue;
        tried_blank = true;
      }
      auto snap = save();
      s.demand += n;
      s.groups.push_back(g);
      bool ok = true;
      if (s.edge >= 0) {
        edges_[s.edge].w += n;
        fwd_.push_back(edges_[s.edge].from);
        bwd_.push_back(edges_[s.edge].to);
        ok = propagate();
      }
      if (ok && pack(i + 1, si)) return true;
      if (s.edge >= 0) edges_[s.edge].w -= n;
      s.demand -= n;
      s.groups.pop_back();
      restore(std::move(snap));
      if (timed_out_) return false;
    }
    return false;
  }

  void materialize() {
    result_ = Layout{};
    result_.grid = pb_.grid;
    std::vector<Hole> at(pb_.model.pins.size());
    std::vector<char> used;
    for (std::size_t g = 0; g < pb_.size.size(); ++g) {
      if (!pb_.linked[g]) continue;
      const int s = est_[start(static_cast<int>(g))];
      const int e = est_[end(static_cast<int>(g))];
      used.assign(e - s + 1, 0);
      for (int q : pb_.coupled[g]) {
        at[q] = {strip_[g], est_[node_of_pin_[q]]};
        used[at[q].position - s] = 1;
      }
      int cursor = 0;
      for (int q : pb_.model.groups[g].pins) {
        if (node_of_pin_[q] >= 0) continue;
        while (used[cursor]) ++cursor;
        used[cursor] = 1;
        at[q] = {strip_[g], s + cursor};
      }
    }
    for (const auto& slot : slots_) {
      int pos = 1;
      if (slot.edge >= 0) {
        const Edge& e = edges_[slot.edge];
        pos = e.from == 0 ? 1 : est_[e.from] + 2;
      }
      for (int g : slot.groups) {
        for (int q : pb_.model.groups[g].pins) at[q] = {slot.row, pos++};
        ++pos;
      }
    }
    for (std::size_t q = 0; q < at.size(); ++q) result_.placements.push_back({pb_.model.pins[q].ref, at[q]});
  }

  const SearchProblem& pb_;
  std::vector<int> strip_;
  int width_;
  int length_;
  const Deadline& deadline_;

  std::vector<int> node_of_group_;
  std::vector<int> node_of_pin_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> est_;
  std::vector<int> lst_;
  std::vector<int> fwd_;
  std::vector<int> bwd_;

  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<int>> rows_of_;
  long long slack_ = 0;
  std::map<int, std::vector<int>> ranked_;
  std::vector<int> rank_rows_;
  std::vector<int> multi_;
  std::vector<Slot> slots_;

  Layout result_;
  bool reached_packing_ = false;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace stripforge::detail

#endif  // STRIPFORGE_POSITION_SEARCH_HPP_
