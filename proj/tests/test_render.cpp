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

// SVG and ASCII drawings of finished layouts.

#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "test_support.hpp"

namespace {

using namespace stripforge;
using sftest::make_layout;
namespace pt = boost::property_tree;

struct SvgCounts {
  int holes = 0;
  int pins = 0;
  int cuts = 0;
  int labels = 0;
  int width = 0;
  int height = 0;
};

void count(const pt::ptree& node, SvgCounts& out) {
  for (const auto& [tag, child] : node) {
    if (tag == "<xmlattr>") continue;
    const std::string cls = child.get("<xmlattr>.class", "");
    if (tag == "circle" && cls == "hole") ++out.holes;
    if (tag == "circle" && cls == "pin") ++out.pins;
    if (tag == "g" && cls == "cut") ++out.cuts;
    if (tag == "text" && cls == "label") ++out.labels;
    count(child, out);
  }
}

// Parses the document with a real XML parser; throws when it is not well formed.
SvgCounts parse_svg(const std::string& svg) {
  std::istringstream in(svg);
  pt::ptree tree;
  pt::read_xml(in, tree);
  const auto& root = tree.get_child("svg");
  SvgCounts out;
  out.width = root.get<int>("<xmlattr>.width");
  out.height = root.get<int>("<xmlattr>.height");
  count(root, out);
  return out;
}

Layout resistor_layout() { return make_layout({}, {{"R1", 1, 1, 1}, {"R1", 2, 2, 4}}); }

TEST(Ascii, SingleResistor) {
  RenderOptions opt;
  opt.format = RenderFormat::ascii;
  opt.show_labels = false;
  EXPECT_EQ(render(resistor_layout(), sftest::single_resistor(), {}, opt), "Rooo\noooR\n");
}

TEST(Ascii, LegendListsPins) {
  const std::string text = render_ascii(resistor_layout(), sftest::single_resistor(), {});
  EXPECT_EQ(text, "Rooo\noooR\n\nR1 1@1:1 2@2:4\n");
}

TEST(Ascii, CutMarkedPastGap) {
  const Circuit c = sftest::make_circuit({{"A1", ComponentKind::other, 1}, {"B1", ComponentKind::other, 1}}, {});
  const Layout l = make_layout({}, {{"A1", 1, 1, 1}, {"B1", 1, 1, 3}});
  const std::vector<Cut> cuts{{1, 1}};
  RenderOptions opt;
  opt.show_labels = false;
  EXPECT_EQ(render_ascii(l, c, cuts, opt), "AXB\n");
}

TEST(Ascii, EmptyLayoutIsEmpty) { EXPECT_EQ(render_ascii(Layout{}, Circuit{}, {}), ""); }

TEST(Svg, WellFormedAndComplete) {
  const Circuit c = sftest::load_corpus("guitar_pedal");
  const auto r = solve(c);
  ASSERT_TRUE(r.layout.has_value());
  Layout l = normalize(*r.layout, c);
  l.cuts = derive_cuts(l, c);
  const auto e = board_extent(l);
  const std::string svg = render_svg(l, c, l.cuts);
  const SvgCounts n = parse_svg(svg);
  EXPECT_EQ(n.pins, static_cast<int>(l.placements.size()));
  EXPECT_EQ(n.holes, e.area - static_cast<int>(l.placements.size()));
  EXPECT_EQ(n.cuts, static_cast<int>(l.cuts.size()));
  EXPECT_EQ(n.labels, static_cast<int>(c.components.size()));
  const int cell = RenderOptions{}.cell_size;
  EXPECT_EQ(n.width, e.length * cell + cell);
  EXPECT_EQ(n.height, e.width * cell + cell);
}

TEST(Svg, EmptyLayoutIsBoardOnly) {
  const SvgCounts n = parse_svg(render_svg(Layout{}, Circuit{}, {}));
  EXPECT_EQ(n.pins, 0);
  EXPECT_EQ(n.holes, 0);
}

TEST(Svg, Deterministic) {
  const Circuit c = sftest::load_corpus("lrc_filter");
  Layout l = normalize(*solve(c).layout, c);
  l.cuts = derive_cuts(l, c);
  RenderOptions dark;
  dark.theme = Theme::dark;
  EXPECT_EQ(render_svg(l, c, l.cuts), render_svg(l, c, l.cuts));
  EXPECT_EQ(render_svg(l, c, l.cuts, dark), render_svg(l, c, l.cuts, dark));
  EXPECT_NE(render_svg(l, c, l.cuts), render_svg(l, c, l.cuts, dark));
}

TEST(Svg, LabelsOptional) {
  RenderOptions opt;
  opt.show_labels = false;
  EXPECT_EQ(parse_svg(render_svg(resistor_layout(), sftest::single_resistor(), {}, opt)).labels, 0);
}

TEST(Svg, EscapesMarkup) {
  Circuit c = sftest::single_resistor();
  c.source_name = "a<b&\"c\"";
  EXPECT_NO_THROW((void)parse_svg(render_svg(resistor_layout(), c, {})));
  EXPECT_EQ(detail::xml_escape("<&>\"'"), "&lt;&amp;&gt;&quot;&apos;");
}

TEST(Render, RefusesUnnormalizedLayout) {
  const Layout shifted = translated(resistor_layout(), 1, 0);
  EXPECT_THROW((void)render_svg(shifted, sftest::single_resistor(), {}), RenderError);
  EXPECT_THROW((void)render_ascii(shifted, sftest::single_resistor(), {}), RenderError);
}

TEST(Render, RefusesCutOffBoard) {
  const std::vector<Cut> cuts{{1, 4}};
  EXPECT_THROW((void)render_svg(resistor_layout(), sftest::single_resistor(), cuts), RenderError);
}

TEST(Render, RejectsTinyCells) {
  RenderOptions opt;
  opt.cell_size = 4;
  EXPECT_THROW((void)render_svg(resistor_layout(), sftest::single_resistor(), {}, opt), RenderError);
}

TEST(Render, OptionNames) {
  EXPECT_EQ(render_format_from_string("ascii"), RenderFormat::ascii);
  EXPECT_EQ(theme_from_string("dark"), Theme::dark);
  EXPECT_THROW((void)render_format_from_string("png"), std::invalid_argument);
  EXPECT_THROW((void)theme_from_string("sepia"), std::invalid_argument);
}

}  // namespace
