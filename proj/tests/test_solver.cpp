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

// Exact search, both pipelines, against the brute-force reference.

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace {

using namespace stripforge;

SolveConfig on_grid(GridConfig g, SolveMode m = SolveMode::two_phase) {
  SolveConfig cfg;
  cfg.grid = g;
  cfg.mode = m;
  return cfg;
}

void expect_feasible(const Circuit& c, const SolveResult& r, const SolveConfig& cfg) {
  ASSERT_TRUE(r.layout.has_value());
  EXPECT_TRUE(sftest::oracle_feasible(c, *r.layout, cfg.constraints()));
  ASSERT_TRUE(r.objective.has_value());
  EXPECT_EQ(*r.objective, sftest::oracle_objective(c, *r.layout));
}

TEST(SolveMode, Names) {
  EXPECT_EQ(solve_mode_from_string("two_phase"), SolveMode::two_phase);
  EXPECT_EQ(solve_mode_from_string("one_phase"), SolveMode::one_phase);
  EXPECT_THROW((void)solve_mode_from_string("both"), std::invalid_argument);
  EXPECT_EQ(to_string(SolveStatus::feasible_only), "feasible_only");
}

TEST(Phase1, ResistorOnSmallGrid) {
  const Circuit c = sftest::single_resistor();
  const auto cfg = on_grid({5, 8});
  const auto r = solve_phase1(c, cfg);
  EXPECT_EQ(r.status, SolveStatus::feasible_only);
  expect_feasible(c, r, cfg);
  EXPECT_TRUE(check_all(c, *r.layout).empty());
}

TEST(Phase1, SingleStripIsInfeasible) {
  const auto r = solve_phase1(sftest::single_resistor(), on_grid({1, 50}));
  EXPECT_EQ(r.status, SolveStatus::infeasible);
  EXPECT_FALSE(r.layout.has_value());
  EXPECT_FALSE(r.note.empty());
}

TEST(Phase1, EmptyCircuit) {
  const auto r = solve_phase1(Circuit{}, on_grid({5, 8}));
  ASSERT_TRUE(r.layout.has_value());
  EXPECT_TRUE(r.layout->placements.empty());
}

TEST(Solve, SingleResistorFullGrid) {
  for (SolveMode m : {SolveMode::two_phase, SolveMode::one_phase}) {
    const auto cfg = on_grid({30, 50}, m);
    const auto r = solve(sftest::single_resistor(), cfg);
    EXPECT_EQ(r.status, SolveStatus::optimal);
    ASSERT_TRUE(r.objective.has_value());
    EXPECT_EQ(*r.objective, (ObjectiveTuple{1, 8, 2}));
    expect_feasible(sftest::single_resistor(), r, cfg);
  }
}

TEST(Solve, SingleResistorMatchesBruteForce) {
  // Translation invariance: the optimum on any grid at least 2x4 is the optimum on 2x4.
  const auto bf = brute_force_solve(sftest::single_resistor(), on_grid({2, 4}));
  EXPECT_EQ(bf.status, SolveStatus::optimal);
  ASSERT_TRUE(bf.objective.has_value());
  EXPECT_EQ(*bf.objective, (ObjectiveTuple{1, 8, 2}));
  const auto r = solve_phase2(sftest::single_resistor(), on_grid({2, 4}));
  EXPECT_EQ(r.objective, bf.objective);
}

TEST(Solve, SingleStripIsInfeasible) {
  for (SolveMode m : {SolveMode::two_phase, SolveMode::one_phase}) {
    const auto r = solve(sftest::single_resistor(), on_grid({1, 50}, m));
    EXPECT_EQ(r.status, SolveStatus::infeasible);
    EXPECT_FALSE(r.note.empty());
  }
  EXPECT_EQ(brute_force_solve(sftest::single_resistor(), on_grid({1, 50})).status, SolveStatus::infeasible);
}

TEST(Solve, EmptyCircuit) {
  const auto r = solve(Circuit{});
  EXPECT_EQ(r.status, SolveStatus::optimal);
  ASSERT_TRUE(r.layout.has_value());
  EXPECT_TRUE(r.layout->placements.empty());
  EXPECT_EQ(r.objective, (ObjectiveTuple{0, 0, 0}));
  const auto bf = brute_force_solve(Circuit{});
  EXPECT_EQ(bf.status, SolveStatus::optimal);
  EXPECT_EQ(bf.objective, (ObjectiveTuple{0, 0, 0}));
}

TEST(Solve, RejectsNonPositiveGrid) {
  EXPECT_THROW((void)solve(sftest::single_resistor(), on_grid({0, 5})), std::invalid_argument);
}

TEST(Solve, TwoIndependentResistors) {
  const Circuit c = sftest::make_circuit({{"R1", ComponentKind::resistor, 2}, {"R2", ComponentKind::resistor, 2}},
                                         {{{"R1", 1}}, {{"R1", 2}}, {{"R2", 1}}, {{"R2", 2}}});
  const auto r = solve(c, on_grid({30, 50}));
  EXPECT_EQ(r.status, SolveStatus::optimal);
  ASSERT_TRUE(r.objective.has_value());
  EXPECT_EQ(r.objective->total_strip_distance, 2);
  const auto bf = brute_force_solve(c, on_grid({4, 8}));
  EXPECT_EQ(bf.objective, r.objective);
}

TEST(BruteForce, GuardRefusesHugeSpaces) {
  const Circuit c = sftest::load_corpus("led_flasher");
  EXPECT_THROW((void)brute_force_solve(c, on_grid({30, 50})), std::length_error);
}

void compare_random(unsigned seed, int count, bool unsigned_span) {
  std::mt19937 rng(seed);
  for (int it = 0; it < count; ++it) {
    const Circuit c = sftest::random_small_circuit(rng);
    SolveConfig cfg = on_grid(sftest::random_small_grid(rng, c.pins().size(), 3e5));
    cfg.unsigned_span = unsigned_span;
    const auto bf = brute_force_solve(c, cfg);
    for (SolveMode m : {SolveMode::two_phase, SolveMode::one_phase}) {
      cfg.mode = m;
      const auto r = solve(c, cfg);
      EXPECT_EQ(r.status, bf.status) << "seed " << seed << " instance " << it;
      EXPECT_EQ(r.objective, bf.objective) << "seed " << seed << " instance " << it;
      if (r.layout) EXPECT_TRUE(sftest::oracle_feasible(c, *r.layout, cfg.constraints()));
    }
  }
}

TEST(SolveRandom, MatchesBruteForceSigned) { compare_random(101, 60, false); }
TEST(SolveRandom, MatchesBruteForceUnsigned) { compare_random(202, 60, true); }

TEST(SolveRandom, LargerCircuitsMatchBruteForce) {
  // Four components on small boards stress the strip enumeration.
  std::mt19937 rng(303);
  for (int it = 0; it < 15; ++it) {
    const Circuit c = sftest::random_small_circuit(rng, 4, 5);
    SolveConfig cfg = on_grid(sftest::random_small_grid(rng, c.pins().size(), 3e6));
    const auto bf = brute_force_solve(c, cfg);
    const auto r = solve(c, cfg);
    EXPECT_EQ(r.objective, bf.objective) << it;
  }
}

TEST(Solve, FixturesAgreeAcrossModesAndVerify) {
  for (const auto& name : sftest::corpus_names()) {
    const Circuit c = sftest::load_corpus(name);
    const auto two = solve(c, on_grid({30, 50}, SolveMode::two_phase));
    const auto one = solve(c, on_grid({30, 50}, SolveMode::one_phase));
    EXPECT_EQ(two.status, SolveStatus::optimal) << name;
    EXPECT_EQ(one.status, SolveStatus::optimal) << name;
    EXPECT_EQ(two.objective, one.objective) << name;
    expect_feasible(c, two, on_grid({30, 50}));
    expect_feasible(c, one, on_grid({30, 50}));
    EXPECT_EQ(one.phase1_time, 0.0);
  }
}

TEST(Solve, LedFlasherIsQuick) {
  const auto r = solve(sftest::load_corpus("led_flasher"));
  EXPECT_EQ(r.status, SolveStatus::optimal);
  EXPECT_LT(r.total_time, 120.0);
}

TEST(Solve, TinyTimeLimitTimesOut) {
  SolveConfig cfg;
  cfg.time_limit = 0.001;
  const Circuit c = sftest::load_corpus("counter_4bit");
  const auto r = solve(c, cfg);
  EXPECT_EQ(r.status, SolveStatus::timeout);
  if (r.layout) EXPECT_TRUE(sftest::oracle_feasible(c, *r.layout, cfg.constraints()));
}

TEST(Solve, Deterministic) {
  const Circuit c = sftest::load_corpus("opamp_filter");
  const auto a = solve(c);
  const auto b = solve(c);
  ASSERT_TRUE(a.layout && b.layout);
  EXPECT_EQ(*a.layout, *b.layout);
}

TEST(Solve, IncumbentTraceImproves) {
  std::vector<std::pair<ObjectiveTuple, std::string>> trace;
  SolveConfig cfg;
  cfg.on_incumbent = [&](const ObjectiveTuple& t, std::string_view tag) { trace.emplace_back(t, std::string(tag)); };
  const auto r = solve(sftest::load_corpus("guitar_pedal"), cfg);
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace.front().second, "phase1");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i].second, "phase2");
    EXPECT_LT(trace[i].first, trace[i - 1].first);
  }
  ASSERT_TRUE(r.objective.has_value());
  EXPECT_FALSE(*r.objective < trace.back().first);
  EXPECT_FALSE(trace.back().first < *r.objective);
}

TEST(Solve, OptimalIncumbentIsKept) {
  const Circuit c = sftest::load_corpus("lrc_filter");
  const auto best = solve(c);
  ASSERT_TRUE(best.layout.has_value());
  const auto again = solve_phase2(c, {}, best.layout);
  EXPECT_EQ(again.status, SolveStatus::optimal);
  EXPECT_EQ(again.objective, best.objective);
}

TEST(Solve, WarmStartNeverWorse) {
  std::mt19937 rng(77);
  for (int it = 0; it < 40; ++it) {
    const Circuit c = sftest::random_small_circuit(rng);
    const GridConfig g{5, 8};
    auto seed = sftest::sampled_feasible_layout(c, g, rng);
    if (!seed) continue;
    const auto r = solve_phase2(c, on_grid(g), seed);
    ASSERT_TRUE(r.objective.has_value());
    EXPECT_FALSE(sftest::oracle_objective(c, *seed) < *r.objective);
    EXPECT_EQ(r.objective, solve_phase2(c, on_grid(g)).objective);
  }
}

}  // namespace
