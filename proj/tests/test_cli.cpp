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

// End-to-end runs of the command-line tool: exit codes, files and configuration layering.

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace {

using namespace stripforge;
using sftest::run_cli;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("stripforge_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  // Parses a corpus netlist into `name`.json in the scratch directory.
  std::string ir_for(const std::string& name) const {
    const std::string ir = path(name + ".json");
    EXPECT_EQ(run_cli("parse " + (sftest::corpus_dir() / (name + ".net")).string() + " -o " + ir).code, 0);
    return ir;
  }

  std::string resistor_ir() const {
    const std::string ir = path("r1.json");
    std::ofstream(ir) << circuit_to_json(sftest::single_resistor());
    return ir;
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, ParseLedFlasher) {
  const auto r = run_cli("parse " + (sftest::corpus_dir() / "led_flasher.net").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["components"].size(), 9U);
  EXPECT_EQ(doc["nets"].size(), 7U);
}

TEST_F(Cli, ParseEmptyNetlist) {
  const auto r = run_cli("parse " + (sftest::fixture_dir() / "small/empty.net").string());
  ASSERT_EQ(r.code, 0);
  const Circuit c = json_to_circuit(r.out);
  EXPECT_TRUE(c.components.empty());
}

TEST_F(Cli, ParseMalformedExits2) {
  const auto r = run_cli("parse " + (sftest::fixture_dir() / "small/malformed.net").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3:5"), std::string::npos) << r.err;
}

TEST_F(Cli, ParseMissingFileExits2) { EXPECT_EQ(run_cli("parse " + path("nope.net")).code, 2); }

TEST_F(Cli, UnknownOptionExits2) { EXPECT_EQ(run_cli("solve --frobnicate x.json").code, 2); }

TEST_F(Cli, SolveSingleResistor) {
  const auto r = run_cli("solve " + resistor_ir() + " -o " + path("l.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const LayoutFile f = layout_from_json(sftest::read_text(path("l.json")));
  ASSERT_TRUE(f.objective.has_value());
  EXPECT_EQ(*f.objective, (ObjectiveTuple{1, 8, 2}));
  const auto timing = nlohmann::json::parse(r.out);
  EXPECT_TRUE(timing.contains("total_s")) << r.out;
}

TEST_F(Cli, SolveSingleStripExits3) {
  EXPECT_EQ(run_cli("solve " + resistor_ir() + " --grid 1x50 -o " + path("l.json")).code, 3);
}

TEST_F(Cli, SolveTinyTimeLimitExits4) {
  const std::string ir = ir_for("counter_4bit");
  EXPECT_EQ(run_cli("solve " + ir + " --time-limit 0.001 -o " + path("l.json")).code, 4);
}

TEST_F(Cli, SolveBadGridExits2) { EXPECT_EQ(run_cli("solve " + resistor_ir() + " --grid 0x5").code, 2); }

TEST_F(Cli, VerifyExitCodes) {
  const std::string ir = ir_for("lrc_filter");
  ASSERT_EQ(run_cli("solve " + ir + " -o " + path("l.json")).code, 0);
  const auto ok = run_cli("verify " + ir + " " + path("l.json"));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_TRUE(nlohmann::json::parse(ok.out)["overall"].get<bool>());

  auto doc = nlohmann::json::parse(sftest::read_text(path("l.json")));
  auto dup = doc;
  dup["placements"][1]["strip"] = dup["placements"][0]["strip"];
  dup["placements"][1]["position"] = dup["placements"][0]["position"];
  write("dup.json", dup.dump());
  EXPECT_EQ(run_cli("verify " + ir + " " + path("dup.json")).code, 1);

  auto wide = doc;
  wide["board"]["width"] = wide["board"]["width"].get<int>() + 1;
  write("wide.json", wide.dump());
  const auto bad = run_cli("verify " + ir + " " + path("wide.json"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(nlohmann::json::parse(bad.out)["dimensions_ok"].get<bool>());
}

TEST_F(Cli, RenderAsciiAndSvg) {
  const std::string ir = resistor_ir();
  ASSERT_EQ(run_cli("solve " + ir + " -o " + path("l.json")).code, 0);
  const auto ascii = run_cli("render " + ir + " " + path("l.json") + " --format ascii --no-labels");
  ASSERT_EQ(ascii.code, 0) << ascii.err;
  EXPECT_EQ(ascii.out.size(), 10U);
  EXPECT_EQ(std::count(ascii.out.begin(), ascii.out.end(), 'R'), 2);
  const auto svg = run_cli("render " + ir + " " + path("l.json") + " --theme dark --cell-size 16");
  ASSERT_EQ(svg.code, 0);
  EXPECT_NE(svg.out.find("<svg"), std::string::npos);
}

TEST_F(Cli, RenderRefusesShiftedLayout) {
  const std::string ir = resistor_ir();
  write("shifted.json", layout_to_json(sftest::make_layout({30, 50}, {{"R1", 1, 2, 2}, {"R1", 2, 3, 5}})));
  EXPECT_EQ(run_cli("render " + ir + " " + path("shifted.json")).code, 2);
}

TEST_F(Cli, ExportAspMatchesGolden) {
  const std::string ir = ir_for("opamp_filter");
  const auto r = run_cli("export-asp " + ir);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, sftest::read_text(sftest::golden_dir() / "opamp_filter.lp"));
}

TEST_F(Cli, BenchEmptyDirectory) {
  std::filesystem::create_directories(dir_ / "none");
  const auto r = run_cli("bench " + path("none"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(kBenchHeader) + "\n");
}

TEST_F(Cli, BenchUnknownModeExits2) {
  EXPECT_EQ(run_cli("bench " + sftest::corpus_dir().string() + " --modes three_phase").code, 2);
}

TEST_F(Cli, SolveIsByteDeterministic) {
  const std::string ir = ir_for("guitar_pedal");
  ASSERT_EQ(run_cli("solve " + ir + " -o " + path("a.json")).code, 0);
  ASSERT_EQ(run_cli("solve " + ir + " -o " + path("b.json")).code, 0);
  EXPECT_EQ(sftest::read_text(path("a.json")), sftest::read_text(path("b.json")));
  const auto ra = run_cli("render " + ir + " " + path("a.json"));
  const auto rb = run_cli("render " + ir + " " + path("b.json"));
  EXPECT_EQ(ra.out, rb.out);
}

TEST_F(Cli, EnvironmentOverridesDefault) {
  EXPECT_EQ(run_cli("solve " + resistor_ir(), "STRIPFORGE_GRID=1x50").code, 3);
}

TEST_F(Cli, FlagOverridesEnvironment) {
  EXPECT_EQ(run_cli("solve " + resistor_ir() + " --grid 30x50 -o " + path("l.json"), "STRIPFORGE_GRID=1x50").code, 0);
}

TEST_F(Cli, ConfigFileLayer) {
  write("cfg.toml", "[solve]\ngrid = \"1x50\"\n");
  const std::string ir = resistor_ir();
  EXPECT_EQ(run_cli("--config " + path("cfg.toml") + " solve " + ir).code, 3);
  EXPECT_EQ(run_cli("solve " + ir, "STRIPFORGE_CONFIG=" + path("cfg.toml")).code, 3);
  EXPECT_EQ(run_cli("--config " + path("cfg.toml") + " solve " + ir + " -o " + path("l.json"), "STRIPFORGE_GRID=2x4")
                .code,
            0);
}

TEST_F(Cli, BadConfigExits2) {
  write("cfg.toml", "[solve]\nspeed = 1\n");
  EXPECT_EQ(run_cli("--config " + path("cfg.toml") + " solve " + resistor_ir()).code, 2);
}

TEST_F(Cli, PipelineOnEveryFixture) {
  for (const auto& name : sftest::corpus_names()) {
    const std::string ir = ir_for(name);
    ASSERT_EQ(run_cli("solve " + ir + " -o " + path(name + ".layout.json")).code, 0) << name;
    EXPECT_EQ(run_cli("verify " + ir + " " + path(name + ".layout.json")).code, 0) << name;
  }
}

}  // namespace
