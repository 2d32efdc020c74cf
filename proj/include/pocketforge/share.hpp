#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pocketforge/document.hpp"
#include "pocketforge/error.hpp"
#include "pocketforge/history.hpp"
#include "pocketforge/html_parser.hpp"
#include "pocketforge/utf8.hpp"

namespace pocketforge {

/// Bytes of the downloadable .html file: the editor text in normal form
/// when it parses, otherwise the text unchanged.
inline std::string export_html(const EditorState& state) {
  const ParseResult parsed = parse_html(state.source_text);
  if (const Document* doc = parsed.document()) return serialize(*doc);
  return state.source_text;
}

struct Bookmark {
  std::string label;
  EditorState state;
  std::int64_t created_at = 0;  // ms since the Unix epoch

  friend bool operator==(const Bookmark&, const Bookmark&) = default;
};

/// Where bookmarks live between sessions. load() returns them in insertion
/// order; save() replaces the whole collection.
class StorageAdapter {
 public:
  virtual ~StorageAdapter() = default;
  virtual std::vector<Bookmark> load() = 0;
  virtual void save(const std::vector<Bookmark>& bookmarks) = 0;
};

class MemoryStorage : public StorageAdapter {
 public:
  std::vector<Bookmark> load() override {
    if (!available_) throw StorageError("storage unavailable");
    return items_;
  }
  void save(const std::vector<Bookmark>& bookmarks) override {
    if (!available_) throw StorageError("storage unavailable");
    items_ = bookmarks;
  }
  void set_available(bool available) { available_ = available; }

 private:
  std::vector<Bookmark> items_;
  bool available_ = true;
};

inline std::string bookmarks_to_json(const std::vector<Bookmark>& bookmarks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bookmarks) {
    arr.push_back({{"label", b.label}, {"text", b.state.source_text}, {"created_at", b.created_at}});
  }
  return arr.dump(2) + "\n";
}

inline std::vector<Bookmark> bookmarks_from_json(std::string_view source) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw StorageError("bookmark store is corrupt: " + std::string(e.what()));
  }
  if (!root.is_array()) throw StorageError("bookmark store must be a JSON list");
  std::vector<Bookmark> out;
  for (const auto& item : root) {
    if (!item.is_object() || item.size() != 3 || !item.contains("label") || !item.contains("text") ||
        !item.contains("created_at") || !item["label"].is_string() || !item["text"].is_string() ||
        !item["created_at"].is_number_integer()) {
      throw StorageError("bookmark entries need exactly label, text and created_at");
    }
    out.push_back(Bookmark{item["label"].get<std::string>(),
                           EditorState{item["text"].get<std::string>(), Origin::restored},
                           item["created_at"].get<std::int64_t>()});
  }
  return out;
}

/// JSON list of {"label", "text", "created_at"} in one file. A missing file
/// is an empty store. Writes go through a sibling temp file and a rename.
class FileStorage : public StorageAdapter {
 public:
  explicit FileStorage(std::filesystem::path path) : path_(std::move(path)) {}

  std::vector<Bookmark> load() override {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) {
      if (ec) throw StorageError("cannot access " + path_.string() + ": " + ec.message());
      return {};
    }
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw StorageError("cannot read " + path_.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return bookmarks_from_json(ss.str());
  }

  void save(const std::vector<Bookmark>& bookmarks) override {
    const std::string body = bookmarks_to_json(bookmarks);
    std::filesystem::path tmp = path_;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw StorageError("cannot write " + tmp.string());
      out << body;
      if (!out.flush()) throw StorageError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
    if (ec) throw StorageError("cannot replace " + path_.string() + ": " + ec.message());
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Bookmarks for mutant shopping. Single writer; list() returns a snapshot,
/// newest first, ties on created_at broken by later insertion first.
class BookmarkStore {
 public:
  explicit BookmarkStore(std::shared_ptr<StorageAdapter> storage)
      : storage_(std::move(storage)), items_(storage_->load()) {}

  void add(std::string label, EditorState state, std::int64_t now_ms) {
    if (label.empty()) throw ValidationError("bookmark label must not be empty");
    if (state.source_text.empty()) throw ValidationError("cannot bookmark an empty editor");
    if (!is_valid_utf8(label) || !is_valid_utf8(state.source_text)) {
      throw ValidationError("bookmark label and text must be valid UTF-8");
    }
    auto next = items_;
    next.push_back(Bookmark{std::move(label), std::move(state), now_ms});
    storage_->save(next);
    items_ = std::move(next);
  }

  void add(std::string label, EditorState state) {
    const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now().time_since_epoch());
    add(std::move(label), std::move(state), now.count());
  }

  std::vector<Bookmark> list() const {
    std::vector<std::size_t> order(items_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (items_[a].created_at != items_[b].created_at) {
        return items_[a].created_at > items_[b].created_at;
      }
      return a > b;
    });
    std::vector<Bookmark> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(items_[i]);
    return out;
  }

  std::size_t size() const { return items_.size(); }

 private:
  std::shared_ptr<StorageAdapter> storage_;
  std::vector<Bookmark> items_;
};

}  // namespace pocketforge
