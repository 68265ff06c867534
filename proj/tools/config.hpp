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

#ifndef STRIPFORGE_TOOLS_CONFIG_HPP_
#define STRIPFORGE_TOOLS_CONFIG_HPP_

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "stripforge/errors.hpp"

namespace stripforge::config {

using Value = std::variant<std::string, long long, double, bool>;

// "table.key" -> value. Keys before any [table] header have no prefix.
using Table = std::map<std::string, Value>;

class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

// Drops a trailing comment that is not inside a string.
inline std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (quote == '"' && line[i] == '\\') {
      ++i;
    } else if (quote == 0 && (line[i] == '"' || line[i] == '\'')) {
      quote = line[i];
    } else if (quote != 0 && line[i] == quote) {
      quote = 0;
    } else if (line[i] == '#' && quote == 0) {
      return line.substr(0, i);
    }
  }
  return line;
}

inline Value parse_value(std::string_view v, const std::string& source, int line) {
  if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') {
    std::string_view body = v.substr(1, v.size() - 2);
    if (body.find('\'') != std::string_view::npos) throw ConfigError(source, line, "quote inside literal string");
    return std::string(body);
  }
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c == '"') throw ConfigError(source, line, "unescaped quote in string");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (++i + 1 >= v.size()) throw ConfigError(source, line, "dangling escape");
      switch (v[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: throw ConfigError(source, line, std::string("unsupported escape \\") + v[i]);
      }
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  std::string digits;
  for (char c : v) {
    if (c != '_') digits += c;
  }
  long long i = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
  if (ec == std::errc() && p == digits.data() + digits.size()) return i;
  char* end = nullptr;
  double d = std::strtod(digits.c_str(), &end);
  if (!digits.empty() && end == digits.c_str() + digits.size()) return d;
  throw ConfigError(source, line, "unsupported value '" + std::string(v) + "'");
}

}  // namespace detail

// Reads the subset of TOML this tool needs: [table] headers, comments, and key = value pairs
// whose values are basic or literal strings, integers, floats or booleans. Arrays and inline
// tables are rejected with an error naming the line.
[[nodiscard]] inline Table parse_toml(std::string_view text, const std::string& source = "config") {
  Table out;
  std::string prefix;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = detail::trim(detail::strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3 || line[1] == '[') {
        throw ConfigError(source, line_no, "malformed table header");
      }
      auto name = detail::trim(line.substr(1, line.size() - 2));
      if (!detail::bare_key(name)) throw ConfigError(source, line_no, "bad table name");
      prefix = std::string(name) + ".";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, line_no, "expected key = value");
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    if (!detail::bare_key(key)) throw ConfigError(source, line_no, "bad key '" + std::string(key) + "'");
    if (value.empty()) throw ConfigError(source, line_no, "missing value");
    if (!out.emplace(prefix + std::string(key), detail::parse_value(value, source, line_no)).second) {
      throw ConfigError(source, line_no, "duplicate key '" + prefix + std::string(key) + "'");
    }
  }
  return out;
}

// Settings shared by the subcommands, each unset until some layer provides it.
struct Settings {
  std::optional<std::string> mode;
  std::optional<std::string> grid;
  std::optional<double> time_limit;
  std::optional<bool> unsigned_span;
  std::optional<long long> resistor_span;
  std::optional<std::string> format;
  std::optional<long long> cell_size;
  std::optional<bool> show_labels;
  std::optional<std::string> theme;

  // Fields set in `over` replace ours.
  void overlay(const Settings& over) {
    auto take = [](auto& mine, const auto& theirs) {
      if (theirs) mine = theirs;
    };
    take(mode, over.mode);
    take(grid, over.grid);
    take(time_limit, over.time_limit);
    take(unsigned_span, over.unsigned_span);
    take(resistor_span, over.resistor_span);
    take(format, over.format);
    take(cell_size, over.cell_size);
    take(show_labels, over.show_labels);
    take(theme, over.theme);
  }
};

namespace detail {

template <class T>
std::optional<T> pick(const Table& t, const std::string& key, const std::string& source) {
  auto it = t.find(key);
  if (it == t.end()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    if (const auto* i = std::get_if<long long>(&it->second)) return static_cast<double>(*i);
  }
  if (const auto* v = std::get_if<T>(&it->second)) return *v;
  throw ConfigError(source, 0, "wrong type for '" + key + "'");
}

inline bool parse_bool(std::string_view s, const std::string& name) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument(name + ": expected a boolean, got '" + std::string(s) + "'");
}

}  // namespace detail

[[nodiscard]] inline Settings settings_from_table(const Table& t, const std::string& source = "config") {
  Settings s;
  s.mode = detail::pick<std::string>(t, "solve.mode", source);
  s.grid = detail::pick<std::string>(t, "solve.grid", source);
  s.time_limit = detail::pick<double>(t, "solve.time_limit", source);
  s.unsigned_span = detail::pick<bool>(t, "solve.unsigned_span", source);
  s.resistor_span = detail::pick<long long>(t, "solve.resistor_span", source);
  s.format = detail::pick<std::string>(t, "render.format", source);
  s.cell_size = detail::pick<long long>(t, "render.cell_size", source);
  s.show_labels = detail::pick<bool>(t, "render.show_labels", source);
  s.theme = detail::pick<std::string>(t, "render.theme", source);
  for (const auto& [key, value] : t) {
    static const char* known[] = {"solve.mode",        "solve.grid",       "solve.time_limit",
                                  "solve.unsigned_span", "solve.resistor_span", "render.format",
                                  "render.cell_size",  "render.show_labels", "render.theme"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(source, 0, "unknown key '" + key + "'");
  }
  return s;
}

// STRIPFORGE_MODE, _GRID, _TIME_LIMIT, _UNSIGNED_SPAN, _RESISTOR_SPAN, _FORMAT, _CELL_SIZE,
// _SHOW_LABELS, _THEME. `getenv` is injectable for tests.
template <class Getenv>
[[nodiscard]] Settings settings_from_env(Getenv&& getenv_fn) {
  Settings s;
  auto get = [&](const char* name) -> std::optional<std::string> {
    const char* v = getenv_fn(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  s.mode = get("STRIPFORGE_MODE");
  s.grid = get("STRIPFORGE_GRID");
  if (auto v = get("STRIPFORGE_TIME_LIMIT")) s.time_limit = std::stod(*v);
  if (auto v = get("STRIPFORGE_UNSIGNED_SPAN")) s.unsigned_span = detail::parse_bool(*v, "STRIPFORGE_UNSIGNED_SPAN");
  if (auto v = get("STRIPFORGE_RESISTOR_SPAN")) s.resistor_span = std::stoll(*v);
  s.format = get("STRIPFORGE_FORMAT");
  if (auto v = get("STRIPFORGE_CELL_SIZE")) s.cell_size = std::stoll(*v);
  if (auto v = get("STRIPFORGE_SHOW_LABELS")) s.show_labels = detail::parse_bool(*v, "STRIPFORGE_SHOW_LABELS");
  s.theme = get("STRIPFORGE_THEME");
  return s;
}

// "RxC" such as "30x50".
[[nodiscard]] inline std::pair<int, int> parse_grid(std::string_view s) {
  const auto x = s.find_first_of("xX");
  auto num = [&](std::string_view part) {
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size() || v < 1) {
      throw std::invalid_argument("grid must look like 30x50, got '" + std::string(s) + "'");
    }
    return v;
  };
  if (x == std::string_view::npos) throw std::invalid_argument("grid must look like 30x50, got '" + std::string(s) + "'");
  return {num(s.substr(0, x)), num(s.substr(x + 1))};
}

}  // namespace stripforge::config

#endif  // STRIPFORGE_TOOLS_CONFIG_HPP_
