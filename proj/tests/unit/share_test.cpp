#include "pocketforge/share.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "pocketforge/defaults.hpp"
#include "pocketforge/html_parser.hpp"
#include "pocketforge/tile_grammar.hpp"

using namespace pocketforge;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("pocketforge_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

EditorState page(std::string s) { return {std::move(s), Origin::generated}; }

std::vector<std::string> labels(const std::vector<Bookmark>& items) {
  std::vector<std::string> out;
  for (const auto& b : items) out.push_back(b.label);
  return out;
}

}  // namespace

TEST(ExportHtml, Passthrough) {
  EXPECT_EQ(export_html({"<p>hi</p>", Origin::typed}), "<p>hi</p>");
  EXPECT_EQ(export_html({"<p>hi</p>", Origin::typed}).size(), 9u);
}

TEST(ExportHtml, EmptyStateIsEmptyFile) { EXPECT_EQ(export_html({"", Origin::typed}), ""); }

TEST(ExportHtml, NormalizesParseableText) {
  EXPECT_EQ(export_html({"<P CLASS=a>hi<BR/></P>", Origin::typed}), "<p class=\"a\">hi<br></p>");
}

TEST(ExportHtml, KeepsUnparseableTextVerbatim) {
  EXPECT_EQ(export_html({"<p>unfinished", Origin::typed}), "<p>unfinished");
}

TEST(ExportHtml, GeneratedPagesReparseCleanly) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::string text = serialize(generate(default_tileset(), Seed{seed}));
    const std::string file = export_html({text, Origin::generated});
    EXPECT_EQ(file, text);
    const ParseResult r = parse_html(file);
    ASSERT_TRUE(r.parsed());
    EXPECT_TRUE(r.diagnostics.empty());
  }
}

TEST(BookmarkStore, AddThenList) {
  BookmarkStore store(std::make_shared<MemoryStorage>());
  store.add("first", page("<p>1</p>"), 100);
  const auto items = store.list();
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].label, "first");
  EXPECT_EQ(items[0].state.source_text, "<p>1</p>");
  EXPECT_EQ(items[0].created_at, 100);
}

TEST(BookmarkStore, NewestFirst) {
  BookmarkStore store(std::make_shared<MemoryStorage>());
  store.add("A", page("a"), 100);
  store.add("B", page("b"), 200);
  EXPECT_EQ(labels(store.list()), (std::vector<std::string>{"B", "A"}));
}

TEST(BookmarkStore, TiesBrokenByInsertionOrder) {
  BookmarkStore store(std::make_shared<MemoryStorage>());
  store.add("A", page("a"), 100);
  store.add("B", page("b"), 100);
  store.add("old", page("c"), 50);
  store.add("C", page("d"), 100);
  EXPECT_EQ(labels(store.list()), (std::vector<std::string>{"C", "B", "A", "old"}));
}

TEST(BookmarkStore, ValidationErrors) {
  BookmarkStore store(std::make_shared<MemoryStorage>());
  EXPECT_THROW(store.add("", page("a"), 1), ValidationError);
  EXPECT_THROW(store.add("empty", {"", Origin::typed}, 1), ValidationError);
  EXPECT_THROW(store.add("bad\xFF", page("a"), 1), ValidationError);
  EXPECT_EQ(store.size(), 0u);
}

TEST(BookmarkStore, StorageUnavailable) {
  auto storage = std::make_shared<MemoryStorage>();
  BookmarkStore store(storage);
  storage->set_available(false);
  EXPECT_THROW(store.add("A", page("a"), 1), StorageError);
  EXPECT_EQ(store.size(), 0u);

  EXPECT_THROW(BookmarkStore{storage}, StorageError);
}

TEST(FileStorage, MissingFileIsEmpty) {
  TempDir dir;
  FileStorage storage(dir.path() / "none.json");
  EXPECT_TRUE(storage.load().empty());
}

TEST(FileStorage, SurvivesRestart) {
  TempDir dir;
  const fs::path file = dir.path() / "bookmarks.json";
  std::vector<Bookmark> before;
  {
    BookmarkStore store(std::make_shared<FileStorage>(file));
    store.add("A", page("<p>a</p>"), 100);
    store.add("B \"quoted\" ✓", page("<p>b</p>\n"), 100);
    store.add("C", page("<p>c</p>"), 300);
    before = store.list();
  }
  BookmarkStore reopened(std::make_shared<FileStorage>(file));
  const auto after = reopened.list();
  ASSERT_EQ(after.size(), before.size());
  for (std::size_t i = 0; i < after.size(); ++i) {
    EXPECT_EQ(after[i].label, before[i].label);
    EXPECT_EQ(after[i].state.source_text, before[i].state.source_text);
    EXPECT_EQ(after[i].created_at, before[i].created_at);
  }
  EXPECT_FALSE(fs::exists(file.string() + ".tmp"));
}

TEST(FileStorage, WritesTheDocumentedSchema) {
  TempDir dir;
  const fs::path file = dir.path() / "bookmarks.json";
  BookmarkStore store(std::make_shared<FileStorage>(file));
  store.add("A", page("<p>a</p>"), 1700000000000);
  std::ifstream in(file);
  const auto j = nlohmann::json::parse(in);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0], (nlohmann::json{{"label", "A"}, {"text", "<p>a</p>"}, {"created_at", 1700000000000}}));
}

TEST(FileStorage, CorruptFileIsAStorageError) {
  TempDir dir;
  const fs::path file = dir.path() / "bookmarks.json";
  std::ofstream(file) << "[{\"label\": 1}]";
  EXPECT_THROW(FileStorage(file).load(), StorageError);
  std::ofstream(file, std::ios::trunc) << "not json";
  EXPECT_THROW(FileStorage(file).load(), StorageError);
}

TEST(FileStorage, UnwritableLocationIsAStorageError) {
  TempDir dir;
  BookmarkStore store(std::make_shared<FileStorage>(dir.path() / "no" / "such" / "dir" / "b.json"));
  EXPECT_THROW(store.add("A", page("a"), 1), StorageError);
}
