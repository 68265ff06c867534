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

#ifndef STRIPFORGE_RENDER_HPP_
#define STRIPFORGE_RENDER_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "layout.hpp"

namespace stripforge {

enum class RenderFormat { svg, ascii };
enum class Theme { light, dark };

struct RenderOptions {
  RenderFormat format = RenderFormat::svg;
  int cell_size = 24;  // SVG pixels per hole
  bool show_labels = true;
  Theme theme = Theme::light;
};

[[nodiscard]] inline RenderFormat render_format_from_string(std::string_view s) {
  if (s == "svg") return RenderFormat::svg;
  if (s == "ascii") return RenderFormat::ascii;
  throw std::invalid_argument("unknown render format '" + std::string(s) + "'");
}

[[nodiscard]] inline Theme theme_from_string(std::string_view s) {
  if (s == "light") return Theme::light;
  if (s == "dark") return Theme::dark;
  throw std::invalid_argument("unknown theme '" + std::string(s) + "'");
}

class RenderError : public Error {
 public:
  using Error::Error;
};

namespace detail {

[[nodiscard]] inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Palette {
  const char* background;
  const char* board;
  const char* copper;
  const char* hole;
  const char* pin;
  const char* wire;
  const char* cut;
  const char* text;
};

[[nodiscard]] inline Palette palette(Theme t) {
  if (t == Theme::dark) {
    return {"#1e1f22", "#d7dae0", "#8a5a2b", "#0f1012", "#7ee787", "#79c0ff", "#ff7b72", "#f0f3f6"};
  }
  return {"#fbf7ef", "#333333", "#e0a96d", "#5b4636", "#1b7f3b", "#1f5fbf", "#c62828", "#111111"};
}

// Refuses layouts that are not anchored at (1, 1) and cuts that fall off the board.
inline std::optional<BoardExtent> checked_extent(const Layout& layout, std::span<const Cut> cuts) {
  if (layout.placements.empty()) {
    if (!cuts.empty()) throw RenderError("cuts given for an empty layout");
    return std::nullopt;
  }
  BoardExtent e = board_extent(layout);
  if (e.min_strip != 1 || e.min_position != 1) {
    throw RenderError("layout is not normalized: it starts at strip " + std::to_string(e.min_strip) +
                      ", position " + std::to_string(e.min_position));
  }
  for (const auto& c : cuts) {
    if (c.strip < 1 || c.strip > e.max_strip || c.after_position < 1 || c.after_position >= e.max_position) {
      throw RenderError("cut on strip " + std::to_string(c.strip) + " after position " +
                        std::to_string(c.after_position) + " lies outside the board");
    }
  }
  return e;
}

// Pins per component in pin order, components in circuit order.
inline std::vector<std::pair<const Component*, std::vector<Hole>>> component_pins(const Layout& layout,
                                                                                  const Circuit& circuit) {
  std::vector<std::pair<const Component*, std::vector<Hole>>> out;
  for (const auto& c : circuit.components) {
    std::vector<Hole> holes;
    for (int p = 1; p <= c.pin_count; ++p) {
      if (const Hole* h = layout.find(c.ref, p)) holes.push_back(*h);
    }
    if (!holes.empty()) out.emplace_back(&c, std::move(holes));
  }
  return out;
}

}  // namespace detail

// Strips are rows, top to bottom; positions are columns, left to right. Empty holes get a small
// circle and pins a larger one tagged with data-ref/data-pin. Each component is a chain of lines
// through its pins, and each cut an X over the first hole past its gap.
[[nodiscard]] inline std::string render_svg(const Layout& layout, const Circuit& circuit, std::span<const Cut> cuts,
                                            const RenderOptions& options = {}) {
  if (options.cell_size < 8) throw RenderError("cell size must be at least 8");
  const auto extent = detail::checked_extent(layout, cuts);
  const int cell = options.cell_size;
  const int rows = extent ? extent->max_strip : 0;
  const int cols = extent ? extent->max_position : 0;
  const int margin = cell / 2;
  const int width = cols * cell + 2 * margin;
  const int height = rows * cell + 2 * margin;
  const auto pal = detail::palette(options.theme);
  auto cx = [&](int position) { return margin + (position - 1) * cell + cell / 2; };
  auto cy = [&](int strip) { return margin + (strip - 1) * cell + cell / 2; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  o << "  <title>" << detail::xml_escape(circuit.source_name.empty() ? "stripboard layout" : circuit.source_name)
    << "</title>\n";
  o << "  <style>\n"
    << "    .board { fill: " << pal.background << "; stroke: " << pal.board << "; stroke-width: 2; }\n"
    << "    .strip { fill: " << pal.copper << "; }\n"
    << "    .hole { fill: " << pal.hole << "; }\n"
    << "    .pin { fill: " << pal.pin << "; }\n"
    << "    .wire { stroke: " << pal.wire << "; stroke-width: " << std::max(2, cell / 8) << "; stroke-linecap: round; }\n"
    << "    .cut { stroke: " << pal.cut << "; stroke-width: " << std::max(2, cell / 10) << "; }\n"
    << "    .label { fill: " << pal.text << "; font-family: monospace; font-size: " << cell / 2 << "px; }\n"
    << "  </style>\n";
  o << "  <rect class=\"board\" x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << cols * cell
    << "\" height=\"" << rows * cell << "\"/>\n";

  o << "  <g id=\"strips\">\n";
  for (int s = 1; s <= rows; ++s) {
    o << "    <rect class=\"strip\" data-strip=\"" << s << "\" x=\"" << margin << "\" y=\""
      << margin + (s - 1) * cell + cell / 4 << "\" width=\"" << cols * cell << "\" height=\"" << cell / 2
      << "\"/>\n";
  }
  o << "  </g>\n";

  std::map<Hole, const PinPlacement*> occupied;
  for (const auto& p : layout.placements) occupied.emplace(p.hole, &p);
  o << "  <g id=\"holes\">\n";
  for (int s = 1; s <= rows; ++s) {
    for (int x = 1; x <= cols; ++x) {
      if (occupied.contains({s, x})) continue;
      o << "    <circle class=\"hole\" cx=\"" << cx(x) << "\" cy=\"" << cy(s) << "\" r=\"" << std::max(2, cell / 8)
        << "\"/>\n";
    }
  }
  o << "  </g>\n";

  o << "  <g id=\"cuts\">\n";
  const int arm = cell / 4;
  for (const auto& c : cuts) {
    const int x = cx(c.after_position + 1);
    const int y = cy(c.strip);
    o << "    <g class=\"cut\" data-strip=\"" << c.strip << "\" data-after=\"" << c.after_position << "\">"
      << "<line x1=\"" << x - arm << "\" y1=\"" << y - arm << "\" x2=\"" << x + arm << "\" y2=\"" << y + arm
      << "\"/><line x1=\"" << x - arm << "\" y1=\"" << y + arm << "\" x2=\"" << x + arm << "\" y2=\"" << y - arm
      << "\"/></g>\n";
  }
  o << "  </g>\n";

  const auto comps = detail::component_pins(layout, circuit);
  o << "  <g id=\"components\">\n";
  for (const auto& [comp, holes] : comps) {
    o << "    <g class=\"component\" data-ref=\"" << detail::xml_escape(comp->ref) << "\">";
    for (std::size_t i = 1; i < holes.size(); ++i) {
      o << "<line class=\"wire\" x1=\"" << cx(holes[i - 1].position) << "\" y1=\"" << cy(holes[i - 1].strip)
        << "\" x2=\"" << cx(holes[i].position) << "\" y2=\"" << cy(holes[i].strip) << "\"/>";
    }
    o << "</g>\n";
  }
  o << "  </g>\n";

  o << "  <g id=\"pins\">\n";
  for (const auto& p : layout.placements) {
    o << "    <circle class=\"pin\" data-ref=\"" << detail::xml_escape(p.pin.ref) << "\" data-pin=\"" << p.pin.pin
      << "\" cx=\"" << cx(p.hole.position) << "\" cy=\"" << cy(p.hole.strip) << "\" r=\"" << cell / 4 << "\"/>\n";
  }
  o << "  </g>\n";

  if (options.show_labels) {
    o << "  <g id=\"labels\">\n";
    for (const auto& [comp, holes] : comps) {
      const Hole& a = holes.front();
      const Hole& b = holes.size() > 1 ? holes[1] : holes.front();
      const int x = (cx(a.position) + cx(b.position)) / 2;
      const int y = (cy(a.strip) + cy(b.strip)) / 2 - cell / 8;
      o << "    <text class=\"label\" x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"middle\">"
        << detail::xml_escape(comp->ref) << "</text>\n";
    }
    o << "  </g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

// One text row per strip: `o` for an empty hole, `X` for the hole just past a cut, and the
// first character of the reference for a pin. With labels, a legend follows a blank line.
[[nodiscard]] inline std::string render_ascii(const Layout& layout, const Circuit& circuit, std::span<const Cut> cuts,
                                              const RenderOptions& options = {}) {
  const auto extent = detail::checked_extent(layout, cuts);
  if (!extent) return "";
  std::vector<std::string> grid(extent->max_strip, std::string(extent->max_position, 'o'));
  for (const auto& c : cuts) grid[c.strip - 1][c.after_position] = 'X';
  for (const auto& p : layout.placements) {
    grid[p.hole.strip - 1][p.hole.position - 1] = p.pin.ref.empty() ? '?' : p.pin.ref.front();
  }
  std::string out;
  for (const auto& row : grid) out += row + "\n";
  if (options.show_labels) {
    out += "\n";
    for (const auto& [comp, holes] : detail::component_pins(layout, circuit)) {
      out += comp->ref;
      for (int p = 1; p <= comp->pin_count; ++p) {
        const Hole* h = layout.find(comp->ref, p);
        if (h == nullptr) continue;
        out += " " + std::to_string(p) + "@" + std::to_string(h->strip) + ":" + std::to_string(h->position);
      }
      out += "\n";
    }
  }
  return out;
}

[[nodiscard]] inline std::string render(const Layout& layout, const Circuit& circuit, std::span<const Cut> cuts,
                                        const RenderOptions& options = {}) {
  return options.format == RenderFormat::svg ? render_svg(layout, circuit, cuts, options)
                                             : render_ascii(layout, circuit, cuts, options);
}

}  // namespace stripforge

#endif  // STRIPFORGE_RENDER_HPP_
