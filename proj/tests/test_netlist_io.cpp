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

// Netlist parsing, the JSON interchange form and ASP fact emission.

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "test_support.hpp"

namespace {

using namespace stripforge;
using sftest::read_text;

TEST(SExpr, ParsesNestedListsAndStrings) {
  const auto root = sexpr::parse("(a (b \"x y\") c)");
  ASSERT_TRUE(root.is_list());
  EXPECT_EQ(root.head(), "a");
  ASSERT_NE(root.child("b"), nullptr);
  EXPECT_EQ(root.value_of("b")->text, "x y");
}

TEST(SExpr, ReportsLineAndColumnOfUnbalancedParen) {
  try {
    (void)sexpr::parse("(export\n  (components\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 1U);
    EXPECT_GE(e.column(), 1U);
  }
}

TEST(SExpr, StrayCloseParenIsAnError) { EXPECT_THROW((void)sexpr::parse("(a))"), ParseError); }

TEST(InferKind, FollowsDesignatorPrefix) {
  EXPECT_EQ(infer_kind("R12"), ComponentKind::resistor);
  EXPECT_EQ(infer_kind("C3"), ComponentKind::capacitor);
  EXPECT_EQ(infer_kind("L1"), ComponentKind::inductor);
  EXPECT_EQ(infer_kind("D1", "1N4148"), ComponentKind::diode);
  EXPECT_EQ(infer_kind("D2", "LED_Red"), ComponentKind::led);
  EXPECT_EQ(infer_kind("D3", "red", "LED_THT:LED_D5.0mm"), ComponentKind::led);
  EXPECT_EQ(infer_kind("Q1"), ComponentKind::transistor);
  EXPECT_EQ(infer_kind("U4"), ComponentKind::ic);
  EXPECT_EQ(infer_kind("J1"), ComponentKind::connector);
  EXPECT_EQ(infer_kind("P2"), ComponentKind::connector);
  EXPECT_EQ(infer_kind("SW1"), ComponentKind::other);
}

TEST(ParseNetlist, EmptySectionsGiveEmptyCircuit) {
  const Circuit c = parse_netlist(read_text(sftest::fixture_dir() / "small/empty.net"));
  EXPECT_TRUE(c.components.empty());
  EXPECT_TRUE(c.nets.empty());
}

TEST(ParseNetlist, HandWrittenPair) {
  const Circuit c = parse_netlist(read_text(sftest::fixture_dir() / "small/rc_pair.net"));
  ASSERT_EQ(c.components.size(), 2U);
  ASSERT_EQ(c.nets.size(), 2U);
  EXPECT_EQ(c.find("R1")->kind, ComponentKind::resistor);
  EXPECT_EQ(c.find("C1")->kind, ComponentKind::capacitor);
  EXPECT_EQ(c.find("R1")->value, "10k");
  EXPECT_EQ(c.nets[0].members, (std::vector<PinRef>{{"R1", 1}, {"C1", 1}}));
  EXPECT_EQ(c.nets[1].members, (std::vector<PinRef>{{"R1", 2}, {"C1", 2}}));
}

TEST(ParseNetlist, LedFlasherSize) {
  const Circuit c = sftest::load_corpus("led_flasher");
  EXPECT_EQ(c.components.size(), 9U);
  EXPECT_EQ(c.nets.size(), 7U);
}

TEST(ParseNetlist, CorpusSizes) {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> expected{
      {"led_flasher", {9, 7}}, {"lrc_filter", {6, 5}}, {"opamp_filter", {10, 8}},
      {"counter_4bit", {18, 28}}, {"guitar_pedal", {18, 12}}};
  for (const auto& [name, size] : expected) {
    const Circuit c = sftest::load_corpus(name);
    EXPECT_EQ(c.components.size(), size.first) << name;
    EXPECT_EQ(c.nets.size(), size.second) << name;
    EXPECT_NO_THROW(validate(c)) << name;
  }
}

TEST(ParseNetlist, MalformedFixtureFails) {
  EXPECT_THROW((void)parse_netlist(read_text(sftest::fixture_dir() / "small/malformed.net")), ParseError);
}

TEST(ParseNetlist, UnknownReferenceIsNamed) {
  const std::string text =
      "(export (components (comp (ref \"R1\")))"
      " (nets (net (code \"1\") (name \"A\") (node (ref \"R1\") (pin \"1\")) (node (ref \"Q7\") (pin \"2\")))))";
  try {
    (void)parse_netlist(text);
    FAIL() << "expected a semantic error";
  } catch (const SemanticError& e) {
    EXPECT_NE(std::string(e.what()).find("Q7"), std::string::npos);
  }
}

TEST(ParseNetlist, DuplicateReferenceRejected) {
  const std::string text = "(export (components (comp (ref \"R1\")) (comp (ref \"R1\"))) (nets))";
  EXPECT_THROW((void)parse_netlist(text), SemanticError);
}

TEST(ParseNetlist, NonExportRootRejected) { EXPECT_THROW((void)parse_netlist("(design)"), ParseError); }

TEST(ParseNetlist, PinCountCoversHighestWiredPin) {
  const Circuit c = sftest::load_corpus("counter_4bit");
  for (const auto& n : c.nets) {
    for (const auto& m : n.members) EXPECT_LE(m.pin, c.find(m.ref)->pin_count);
  }
}

TEST(Circuit, PartitionAddsUnwiredSingletons) {
  const Circuit c = sftest::make_circuit({{"R1", ComponentKind::resistor, 2}, {"C1", ComponentKind::capacitor, 2}},
                                         {{{"R1", 1}, {"C1", 1}}});
  const auto parts = pin_partition(c);
  EXPECT_EQ(parts.size(), 3U);
  EXPECT_TRUE(parts.contains(std::set<PinRef>{{"R1", 2}}));
  EXPECT_TRUE(parts.contains(std::set<PinRef>{{"C1", 2}}));
}

TEST(Circuit, ValidateCatchesPinOutOfRange) {
  Circuit c = sftest::make_circuit({{"R1", ComponentKind::resistor, 2}}, {{{"R1", 3}}});
  EXPECT_THROW(validate(c), SemanticError);
}

TEST(Circuit, ValidateCatchesPinInTwoNets) {
  Circuit c = sftest::make_circuit({{"R1", ComponentKind::resistor, 2}}, {{{"R1", 1}}, {{"R1", 1}}});
  EXPECT_THROW(validate(c), SemanticError);
}

TEST(IrJson, EmptyCircuit) {
  Circuit c;
  c.source_name = "x";
  EXPECT_EQ(circuit_to_json(c), R"({"components":[],"nets":[],"source_name":"x"})");
  EXPECT_EQ(json_to_circuit(circuit_to_json(c)), c);
}

TEST(IrJson, MatchesGolden) {
  const Circuit c = parse_netlist(read_text(sftest::fixture_dir() / "small/rc_pair.net"));
  std::string golden = read_text(sftest::golden_dir() / "rc_pair.ir.json");
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  EXPECT_EQ(circuit_to_json(c), golden);
  const auto doc = nlohmann::json::parse(golden);
  EXPECT_EQ(doc["components"].size(), 2U);
  EXPECT_EQ(doc["nets"].size(), 2U);
}

TEST(IrJson, GoldenLoadsToPair) {
  const Circuit c = json_to_circuit(read_text(sftest::golden_dir() / "rc_pair.ir.json"));
  EXPECT_EQ(c.components.size(), 2U);
  EXPECT_EQ(c.nets.size(), 2U);
}

TEST(IrJson, RoundTripsEveryFixture) {
  for (const auto& name : sftest::corpus_names()) {
    const Circuit c = sftest::load_corpus(name);
    EXPECT_EQ(json_to_circuit(circuit_to_json(c)), c) << name;
  }
}

TEST(IrJson, MalformedJsonIsSchemaError) { EXPECT_THROW((void)json_to_circuit("{\"components\": ["), SchemaError); }

TEST(IrJson, SchemaErrorNamesPath) {
  try {
    (void)json_to_circuit(R"({"components":[{"ref":"R1","kind":"resistor","value":"","pin_count":"two"}],"nets":[],"source_name":""})");
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_NE(e.path().find("/components/0"), std::string::npos) << e.path();
  }
}

TEST(IrJson, UnknownKindRejected) {
  EXPECT_THROW(
      (void)json_to_circuit(R"({"components":[{"ref":"R1","kind":"flux","value":"","pin_count":2}],"nets":[],"source_name":""})"),
      SchemaError);
}

TEST(Asp, EmptyCircuitEmitsNothing) { EXPECT_EQ(emit_asp_facts(Circuit{}), ""); }

TEST(Asp, PairFacts) {
  const std::string text = emit_asp_facts(json_to_circuit(read_text(sftest::golden_dir() / "rc_pair.ir.json")));
  EXPECT_NE(text.find("component(r1, resistor, \"10k\").\n"), std::string::npos);
  EXPECT_NE(text.find("pin(r1, 1).\n"), std::string::npos);
  EXPECT_NE(text.find("circuit_net(r1, 1, 1).\n"), std::string::npos);
  EXPECT_EQ(text, read_text(sftest::golden_dir() / "rc_pair.lp"));
}

TEST(Asp, Deterministic) {
  const Circuit c = sftest::load_corpus("guitar_pedal");
  EXPECT_EQ(emit_asp_facts(c), emit_asp_facts(c));
}

// Every line must be one of the three fact shapes.
bool conforms(const std::string& text) {
  static const std::regex fact(
      R"re(component\([a-z][a-z0-9_]*, [a-z]+, "([^"\\]|\\.)*"\)\.|pin\([a-z][a-z0-9_]*, [1-9][0-9]*\)\.|circuit_net\([a-z][a-z0-9_]*, [1-9][0-9]*, [1-9][0-9]*\)\.)re");
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!std::regex_match(line, fact)) return false;
  }
  return text.empty() || text.back() == '\n';
}

TEST(Asp, CorpusMatchesGoldensAndGrammar) {
  for (const auto& name : sftest::corpus_names()) {
    const std::string text = emit_asp_facts(sftest::load_corpus(name));
    EXPECT_EQ(text, read_text(sftest::golden_dir() / (name + ".lp"))) << name;
    EXPECT_TRUE(conforms(text)) << name;
  }
}

TEST(Asp, UnsafeCharactersAreMangled) {
  Circuit c = sftest::make_circuit({{"R-1", ComponentKind::resistor, 2}}, {});
  EXPECT_NE(emit_asp_facts(c).find("component(r_1, resistor"), std::string::npos);
}

TEST(Asp, CollidingAtomsRejected) {
  Circuit c = sftest::make_circuit({{"R-1", ComponentKind::resistor, 2}, {"R_1", ComponentKind::resistor, 2}}, {});
  EXPECT_THROW((void)emit_asp_facts(c), EmissionError);
}

TEST(Asp, ReferenceStartingWithDigitRejected) {
  Circuit c = sftest::make_circuit({{"1A", ComponentKind::other, 1}}, {});
  EXPECT_THROW((void)emit_asp_facts(c), EmissionError);
}

TEST(Asp, ValueQuotesEscaped) {
  Circuit c = sftest::make_circuit({{"R1", ComponentKind::resistor, 2}}, {});
  c.components[0].value = "4\"7";
  EXPECT_NE(emit_asp_facts(c).find(R"("4\"7")"), std::string::npos);
}

}  // namespace
