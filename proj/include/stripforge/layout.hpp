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

#ifndef STRIPFORGE_LAYOUT_HPP_
#define STRIPFORGE_LAYOUT_HPP_

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "ir_json.hpp"
#include "json.hpp"

namespace stripforge {

// Board grid: strips are copper rows, positions are holes along a strip. Both 1-based.
struct GridConfig {
  int max_strips = 30;
  int max_positions = 50;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct Hole {
  int strip = 0;
  int position = 0;

  friend auto operator<=>(const Hole&, const Hole&) = default;
};

struct PinPlacement {
  PinRef pin;
  Hole hole;

  friend bool operator==(const PinPlacement&, const PinPlacement&) = default;
};

// Copper removed between `after_position` and `after_position + 1` on `strip`.
struct Cut {
  int strip = 0;
  int after_position = 0;

  friend auto operator<=>(const Cut&, const Cut&) = default;
};

struct Layout {
  GridConfig grid;
  std::vector<PinPlacement> placements;
  std::vector<Cut> cuts;

  [[nodiscard]] const Hole* find(const PinRef& pin) const {
    auto it = std::ranges::find(placements, pin, &PinPlacement::pin);
    return it == placements.end() ? nullptr : &it->hole;
  }

  [[nodiscard]] const Hole* find(std::string_view ref, int pin) const {
    auto it = std::ranges::find_if(placements, [&](const PinPlacement& p) { return p.pin.ref == ref && p.pin.pin == pin; });
    return it == placements.end() ? nullptr : &it->hole;
  }

  friend bool operator==(const Layout&, const Layout&) = default;
};

struct BoardExtent {
  int min_strip = 0;
  int max_strip = 0;
  int min_position = 0;
  int max_position = 0;
  int width = 0;   // strips
  int length = 0;  // positions
  int area = 0;    // holes

  friend bool operator==(const BoardExtent&, const BoardExtent&) = default;
};

// Lexicographic objective: strip distance first, then area, then width.
struct ObjectiveTuple {
  long long total_strip_distance = 0;
  long long board_area = 0;
  long long board_width = 0;

  friend bool operator==(const ObjectiveTuple&, const ObjectiveTuple&) = default;
};

[[nodiscard]] inline std::strong_ordering lex_compare(const ObjectiveTuple& a, const ObjectiveTuple& b) {
  if (auto c = a.total_strip_distance <=> b.total_strip_distance; c != 0) return c;
  if (auto c = a.board_area <=> b.board_area; c != 0) return c;
  return a.board_width <=> b.board_width;
}

inline bool operator<(const ObjectiveTuple& a, const ObjectiveTuple& b) { return lex_compare(a, b) < 0; }

[[nodiscard]] inline std::string to_string(const ObjectiveTuple& t) {
  return "(" + std::to_string(t.total_strip_distance) + ", " + std::to_string(t.board_area) + ", " +
         std::to_string(t.board_width) + ")";
}

// Bounding box of pin-occupied holes. Throws EmptyLayoutError when nothing is placed.
[[nodiscard]] inline BoardExtent board_extent(const Layout& layout) {
  if (layout.placements.empty()) throw EmptyLayoutError();
  BoardExtent e{std::numeric_limits<int>::max(), std::numeric_limits<int>::min(), std::numeric_limits<int>::max(),
                std::numeric_limits<int>::min(), 0, 0, 0};
  for (const auto& p : layout.placements) {
    e.min_strip = std::min(e.min_strip, p.hole.strip);
    e.max_strip = std::max(e.max_strip, p.hole.strip);
    e.min_position = std::min(e.min_position, p.hole.position);
    e.max_position = std::max(e.max_position, p.hole.position);
  }
  e.width = e.max_strip - e.min_strip + 1;
  e.length = e.max_position - e.min_position + 1;
  e.area = e.width * e.length;
  return e;
}

// |strip(pin 1) - strip(pin 2)|, or nullopt when the component lacks either placement.
[[nodiscard]] inline std::optional<int> strip_distance(const Layout& layout, std::string_view ref) {
  const Hole* a = layout.find(ref, 1);
  const Hole* b = layout.find(ref, 2);
  if (a == nullptr || b == nullptr) return std::nullopt;
  return std::abs(a->strip - b->strip);
}

// An empty layout scores (0, 0, 0).
[[nodiscard]] inline ObjectiveTuple objective_tuple(const Layout& layout, const Circuit& circuit) {
  ObjectiveTuple t;
  for (const auto& c : circuit.components) {
    if (auto d = strip_distance(layout, c.ref)) t.total_strip_distance += *d;
  }
  if (!layout.placements.empty()) {
    BoardExtent e = board_extent(layout);
    t.board_area = e.area;
    t.board_width = e.width;
  }
  return t;
}

// Layout with every placement and cut shifted by (dstrip, dposition). The grid is unchanged.
[[nodiscard]] inline Layout translated(Layout layout, int dstrip, int dposition) {
  for (auto& p : layout.placements) {
    p.hole.strip += dstrip;
    p.hole.position += dposition;
  }
  for (auto& c : layout.cuts) {
    c.strip += dstrip;
    c.after_position += dposition;
  }
  return layout;
}

// --- Layout JSON -----------------------------------------------------------------------------

// A layout file as exchanged between solve, verify and render. `board` is the claimed extent.
struct LayoutFile {
  Layout layout;
  std::optional<BoardExtent> board;
  std::optional<ObjectiveTuple> objective;
};

[[nodiscard]] inline nlohmann::json extent_to_json(const BoardExtent& e) {
  return {{"min_strip", e.min_strip},       {"max_strip", e.max_strip}, {"min_position", e.min_position},
          {"max_position", e.max_position}, {"width", e.width},         {"length", e.length},
          {"area", e.area}};
}

[[nodiscard]] inline std::string layout_to_json(const LayoutFile& file) {
  using nlohmann::json;
  const Layout& l = file.layout;
  json placements = json::array();
  for (const auto& p : l.placements) {
    placements.push_back(
        {{"ref", p.pin.ref}, {"pin", p.pin.pin}, {"strip", p.hole.strip}, {"position", p.hole.position}});
  }
  json cuts = json::array();
  for (const auto& c : l.cuts) cuts.push_back({{"strip", c.strip}, {"after_position", c.after_position}});
  json doc = {{"grid", {{"max_strips", l.grid.max_strips}, {"max_positions", l.grid.max_positions}}},
              {"placements", std::move(placements)},
              {"cuts", std::move(cuts)}};
  if (file.board) doc["board"] = extent_to_json(*file.board);
  if (file.objective) {
    doc["objective"] = {{"total_strip_distance", file.objective->total_strip_distance},
                        {"board_area", file.objective->board_area},
                        {"board_width", file.objective->board_width}};
  }
  return doc.dump();
}

[[nodiscard]] inline std::string layout_to_json(const Layout& layout) { return layout_to_json(LayoutFile{layout, {}, {}}); }

[[nodiscard]] inline LayoutFile layout_from_json(std::string_view text) {
  using namespace json_detail;
  const json doc = parse_document(text);
  LayoutFile file;
  const json& grid = member(doc, "", "grid");
  file.layout.grid.max_strips = get_int(grid, "/grid", "max_strips");
  file.layout.grid.max_positions = get_int(grid, "/grid", "max_positions");
  if (file.layout.grid.max_strips < 1) throw SchemaError("/grid/max_strips", "must be >= 1");
  if (file.layout.grid.max_positions < 1) throw SchemaError("/grid/max_positions", "must be >= 1");
  const json& placements = get_array(doc, "", "placements");
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const std::string path = "/placements/" + std::to_string(i);
    file.layout.placements.push_back({{get_string(placements[i], path, "ref"), get_int(placements[i], path, "pin")},
                                      {get_int(placements[i], path, "strip"), get_int(placements[i], path, "position")}});
  }
  const json& cuts = get_array(doc, "", "cuts");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const std::string path = "/cuts/" + std::to_string(i);
    file.layout.cuts.push_back({get_int(cuts[i], path, "strip"), get_int(cuts[i], path, "after_position")});
  }
  if (doc.contains("board")) {
    const json& b = doc["board"];
    BoardExtent e;
    e.min_strip = get_int(b, "/board", "min_strip");
    e.max_strip = get_int(b, "/board", "max_strip");
    e.min_position = get_int(b, "/board", "min_position");
    e.max_position = get_int(b, "/board", "max_position");
    e.width = get_int(b, "/board", "width");
    e.length = get_int(b, "/board", "length");
    e.area = get_int(b, "/board", "area");
    file.board = e;
  }
  if (doc.contains("objective")) {
    const json& o = doc["objective"];
    ObjectiveTuple t;
    t.total_strip_distance = get_int(o, "/objective", "total_strip_distance");
    t.board_area = get_int(o, "/objective", "board_area");
    t.board_width = get_int(o, "/objective", "board_width");
    file.objective = t;
  }
  return file;
}

}  // namespace stripforge

#endif  // STRIPFORGE_LAYOUT_HPP_
