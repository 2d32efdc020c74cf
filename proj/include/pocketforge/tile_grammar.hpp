#pragma once

#include <algorithm>
#include <initializer_list>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "pocketforge/document.hpp"
#include "pocketforge/error.hpp"
#include "pocketforge/rng.hpp"

namespace pocketforge {

enum class SlotKind { css_property, html_element };

// Element roles an html_element slot can fill in the page skeleton.
namespace role {
inline constexpr std::string_view span_text = "span_text";
inline constexpr std::string_view img_src = "img_src";
inline constexpr std::string_view img_alt = "img_alt";
inline constexpr std::string_view figcaption_text = "figcaption_text";
}  // namespace role

struct Slot {
  std::string id;
  SlotKind kind = SlotKind::css_property;
  // CSS property name, or one of the role:: names.
  std::string target;

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Tile {
  std::string value;
  friend bool operator==(const Tile&, const Tile&) = default;
};

/// The generator grammar: ordered slots, each with its candidate tiles.
struct TileSet {
  std::string version;
  std::vector<Slot> slots;
  std::map<std::string, std::vector<Tile>> tiles;

  const std::vector<Tile>& tiles_for(const Slot& slot) const { return tiles.at(slot.id); }
};

struct Seed {
  std::uint64_t value = 0;
};

using BigCount = boost::multiprecision::cpp_int;

inline std::string_view to_string(SlotKind kind) {
  return kind == SlotKind::css_property ? "css_property" : "html_element";
}

namespace detail {

inline bool is_html_role(std::string_view target) {
  return target == role::span_text || target == role::img_src || target == role::img_alt ||
         target == role::figcaption_text;
}

inline bool is_css_property_name(std::string_view name) {
  auto valid = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-'; };
  if (!std::all_of(name.begin(), name.end(), valid)) return false;
  // Custom properties ("--accent") or a plain name starting with a letter.
  if (name.starts_with("--")) return name.size() > 2;
  return !name.empty() && name.front() >= 'a' && name.front() <= 'z';
}

inline void check_keys(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(where + ": unknown key \"" + key + "\"");
    }
  }
  for (auto key : allowed) {
    if (!obj.contains(std::string(key))) {
      throw ValidationError(where + ": missing key \"" + std::string(key) + "\"");
    }
  }
}

inline const std::string& require_string(const nlohmann::json& v, const std::string& where) {
  if (!v.is_string()) throw ValidationError(where + " must be a string");
  return v.get_ref<const std::string&>();
}

// 1-based line/column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Throws ValidationError naming the first offending slot.
inline void validate_tileset(const TileSet& ts) {
  std::set<std::string_view> ids;
  std::set<std::string_view> targets;
  for (const auto& slot : ts.slots) {
    const std::string where = "slot \"" + slot.id + "\"";
    if (slot.id.empty()) throw ValidationError("slot with empty id");
    if (!ids.insert(slot.id).second) throw ValidationError(where + ": duplicate slot id");
    if (slot.kind == SlotKind::css_property && !detail::is_css_property_name(slot.target)) {
      throw ValidationError(where + ": \"" + slot.target + "\" is not a CSS property name");
    }
    if (slot.kind == SlotKind::html_element && !detail::is_html_role(slot.target)) {
      throw ValidationError(where + ": unknown element role \"" + slot.target + "\"");
    }
    if (!targets.insert(slot.target).second) {
      throw ValidationError(where + ": target \"" + slot.target + "\" is already filled by another slot");
    }
    auto it = ts.tiles.find(slot.id);
    if (it == ts.tiles.end() || it->second.empty()) {
      throw ValidationError(where + " has no tiles");
    }
    std::set<std::string_view> seen;
    for (const auto& tile : it->second) {
      if (tile.value.empty()) throw ValidationError(where + ": empty tile value");
      if (!seen.insert(tile.value).second) {
        throw ValidationError(where + ": duplicate tile \"" + tile.value + "\"");
      }
      if (slot.kind == SlotKind::css_property &&
          tile.value.find_first_of(";{}<") != std::string::npos) {
        throw ValidationError(where + ": tile \"" + tile.value +
                              "\" would escape its declaration (contains ; { } or <)");
      }
    }
  }
  for (const auto& [id, _] : ts.tiles) {
    if (!ids.contains(id)) throw ValidationError("tiles listed for undeclared slot \"" + id + "\"");
  }
}

/// Reads the JSON tile-set format:
///   {"version": str, "slots": [{"id", "kind", "target", "tiles": [str, ...]}, ...]}
/// Syntax errors throw ParseError with a line and column; schema and
/// invariant violations throw ValidationError.
inline TileSet load_tileset(std::string_view source) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    auto [line, column] = detail::line_column(source, offset);
    throw ParseError("malformed tile set: " + std::string(e.what()), line, column);
  }
  if (!root.is_object()) throw ValidationError("tile set must be a JSON object");
  detail::check_keys(root, {"version", "slots"}, "tile set");

  TileSet ts;
  ts.version = detail::require_string(root["version"], "version");
  if (!root["slots"].is_array()) throw ValidationError("slots must be an array");

  for (std::size_t i = 0; i < root["slots"].size(); ++i) {
    const auto& js = root["slots"][i];
    const std::string where = "slots[" + std::to_string(i) + "]";
    if (!js.is_object()) throw ValidationError(where + " must be an object");
    detail::check_keys(js, {"id", "kind", "target", "tiles"}, where);

    Slot slot;
    slot.id = detail::require_string(js["id"], where + ".id");
    const std::string& kind = detail::require_string(js["kind"], where + ".kind");
    if (kind == "css_property") {
      slot.kind = SlotKind::css_property;
    } else if (kind == "html_element") {
      slot.kind = SlotKind::html_element;
    } else {
      throw ValidationError("slot \"" + slot.id + "\": unknown kind \"" + kind + "\"");
    }
    slot.target = detail::require_string(js["target"], where + ".target");
    if (!js["tiles"].is_array()) throw ValidationError("slot \"" + slot.id + "\": tiles must be an array");

    std::vector<Tile> tiles;
    for (const auto& jt : js["tiles"]) {
      tiles.push_back(Tile{detail::require_string(jt, "slot \"" + slot.id + "\" tile")});
    }
    if (ts.tiles.contains(slot.id)) throw ValidationError("slot \"" + slot.id + "\": duplicate slot id");
    ts.tiles.emplace(slot.id, std::move(tiles));
    ts.slots.push_back(std::move(slot));
  }
  validate_tileset(ts);
  return ts;
}

/// Product of the per-slot tile counts.
inline BigCount possibility_space_size(const TileSet& ts) {
  BigCount n = 1;
  for (const auto& slot : ts.slots) n *= ts.tiles_for(slot).size();
  return n;
}

/// One tile index per slot, in slot order, drawn uniformly from a
/// SplitMix64 stream seeded with `seed`.
inline std::vector<std::size_t> choose_tiles(const TileSet& ts, Seed seed) {
  SplitMix64 rng(seed.value);
  std::vector<std::size_t> choices;
  choices.reserve(ts.slots.size());
  for (const auto& slot : ts.slots) {
    choices.push_back(static_cast<std::size_t>(rng.below(ts.tiles_for(slot).size())));
  }
  return choices;
}

/// Builds the page skeleton with the given tile index for each slot:
/// a style block with one declaration per CSS slot on `.content`, and a
/// body holding figure > (img, figcaption) followed by a span. Roles
/// without a slot leave their attribute out or their element empty.
inline Document assemble(const TileSet& ts, std::span<const std::size_t> choices) {
  if (choices.size() != ts.slots.size()) {
    throw ValidationError("expected " + std::to_string(ts.slots.size()) + " tile choices, got " +
                          std::to_string(choices.size()));
  }
  std::string css = "\n.content {\n";
  std::map<std::string_view, const std::string*> html;
  for (std::size_t i = 0; i < ts.slots.size(); ++i) {
    const Slot& slot = ts.slots[i];
    const auto& tiles = ts.tiles_for(slot);
    if (choices[i] >= tiles.size()) {
      throw ValidationError("slot \"" + slot.id + "\": tile index out of range");
    }
    const std::string& value = tiles[choices[i]].value;
    if (slot.kind == SlotKind::css_property) {
      css += "  " + slot.target + ": " + value + ";\n";
    } else {
      html[slot.target] = &value;
    }
  }
  css += "}\n";

  auto text_children = [&](std::string_view r) {
    std::vector<Node> out;
    if (auto it = html.find(r); it != html.end()) out.emplace_back(make_text(*it->second));
    return out;
  };
  std::vector<Attribute> img_attrs;
  if (auto it = html.find(role::img_src); it != html.end()) img_attrs.push_back({"src", *it->second});
  if (auto it = html.find(role::img_alt); it != html.end()) img_attrs.push_back({"alt", *it->second});

  const auto nl = [] { return Node(make_text("\n")); };

  Element head = make_element(
      "head", {},
      {nl(), make_element("meta", {{"charset", "utf-8"}}), nl(),
       make_element("meta", {{"name", "viewport"}, {"content", "width=device-width, initial-scale=1"}}),
       nl(), make_element("title", {}, {make_text("Untitled creation")}), nl(),
       make_element("style", {}, {make_text(std::move(css))}), nl()});

  Element figure = make_element(
      "figure", {},
      {nl(), make_element("img", std::move(img_attrs)), nl(),
       make_element("figcaption", {}, text_children(role::figcaption_text)), nl()});

  Element content = make_element("div", {{"class", "content"}},
                                 {nl(), std::move(figure), nl(),
                                  make_element("span", {}, text_children(role::span_text)), nl()});

  Element body = make_element("body", {}, {nl(), std::move(content), nl()});
  Element html_root = make_element("html", {{"lang", "en"}},
                                   {nl(), std::move(head), nl(), std::move(body), nl()});

  Document doc;
  doc.doctype = "html";
  doc.children.emplace_back(make_text("\n"));
  doc.children.emplace_back(std::move(html_root));
  doc.children.emplace_back(make_text("\n"));
  return doc;
}

/// Deterministic for a given (tileset, seed) on every platform.
inline Document generate(const TileSet& ts, Seed seed) {
  const auto choices = choose_tiles(ts, seed);
  return assemble(ts, choices);
}

}  // namespace pocketforge
