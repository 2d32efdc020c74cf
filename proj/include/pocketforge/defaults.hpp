#pragma once

#include <vector>

#include "pocketforge/embedded_data.hpp"
#include "pocketforge/feedback.hpp"
#include "pocketforge/tile_grammar.hpp"

namespace pocketforge {

/// The bundled tile set (data/default_tileset.json).
inline const TileSet& default_tileset() {
  static const TileSet ts = load_tileset(embedded::kDefaultTileset);
  return ts;
}

/// The bundled reference pages (data/reference_pages.json).
inline const std::vector<ReferencePage>& default_reference_pages() {
  static const std::vector<ReferencePage> pages = load_reference_table(embedded::kReferencePages);
  return pages;
}

}  // namespace pocketforge
