#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pocketforge/defaults.hpp"
#include "pocketforge/document.hpp"
#include "pocketforge/error.hpp"
#include "pocketforge/feedback.hpp"
#include "pocketforge/html_parser.hpp"
#include "pocketforge/pattern_audit.hpp"
#include "pocketforge/permalink.hpp"
#include "pocketforge/share.hpp"
#include "pocketforge/tile_grammar.hpp"

namespace pocketforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Everything the CLI touches outside its arguments.
struct CliContext {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  // Value of POCKETFORGE_STORE, if set.
  std::optional<std::string> store_env;
  std::function<std::int64_t()> now_ms = [] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes) || !out.flush()) throw ValidationError("cannot write " + path);
}

inline std::string default_store_path(const CliContext& ctx) {
  if (ctx.store_env && !ctx.store_env->empty()) return *ctx.store_env;
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return (std::filesystem::path(home) / ".pocketforge_bookmarks.json").string();
  }
  return "pocketforge_bookmarks.json";
}

}  // namespace detail

/// Headless driver. `args` excludes the program name. Returns 0 on success,
/// 1 on validation or I/O errors, 2 on usage errors.
inline int run_cli(const std::vector<std::string>& args, CliContext& ctx) {
  CLI::App app{"pocketforge: generate, analyze, share and bookmark single-page HTML artifacts",
               "pocketforge"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string tileset_path = "default";
  std::string out_path;
  auto* gen = app.add_subcommand("generate", "Print a generated page");
  gen->add_option("--seed", seed, "Generator seed (default 0)");
  gen->add_option("--tileset", tileset_path, "Tile-set JSON file, or \"default\"");
  gen->add_option("--out", out_path, "Write to this file instead of stdout");

  std::string analyze_path;
  std::string refs_path;
  std::string locale = "en";
  auto* analyze = app.add_subcommand("analyze", "Report size, diagnostics and comparisons");
  analyze->add_option("path", analyze_path, "HTML file, or - for stdin")->required();
  analyze->add_option("--refs", refs_path, "Reference-page JSON table");
  analyze->add_option("--locale", locale, "Number formatting locale (default en)");

  auto* permalink = app.add_subcommand("permalink", "Convert between text and permalinks");
  permalink->require_subcommand(1);
  auto* encode = permalink->add_subcommand("encode", "stdin text -> permalink");
  auto* decode = permalink->add_subcommand("decode", "stdin permalink -> text");

  std::string store_path;
  std::string label;
  std::string add_file;
  bool list_json = false;
  auto* bookmarks = app.add_subcommand("bookmarks", "Manage saved artifacts");
  bookmarks->require_subcommand(1);
  auto* bm_add = bookmarks->add_subcommand("add", "Bookmark a file (or stdin)");
  bm_add->add_option("--label", label, "Bookmark label")->required();
  bm_add->add_option("--store", store_path, "Bookmark store file");
  bm_add->add_option("file", add_file, "HTML file; stdin when omitted");
  auto* bm_list = bookmarks->add_subcommand("list", "List bookmarks, newest first");
  bm_list->add_option("--store", store_path, "Bookmark store file");
  bm_list->add_flag("--json", list_json, "Print the store format");

  auto* audit = app.add_subcommand("audit", "Print the design-pattern manifest and audit it");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    ctx.out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    ctx.err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      const TileSet ts = tileset_path == "default" ? default_tileset()
                                                   : load_tileset(detail::read_file(tileset_path));
      const std::string html = serialize(generate(ts, Seed{seed}));
      if (out_path.empty()) {
        ctx.out << html;
      } else {
        detail::write_file(out_path, html);
      }
      return kExitOk;
    }

    if (*analyze) {
      const std::string text = analyze_path == "-" ? detail::read_all(ctx.in)
                                                   : detail::read_file(analyze_path);
      const auto refs = refs_path.empty() ? default_reference_pages()
                                          : load_reference_table(detail::read_file(refs_path));
      const SizeReport size = measure_size(text);
      ctx.out << "size: " << size.bytes << " bytes\n";
      const ParseResult parsed = parse_html(text);
      if (const Document* doc = parsed.document()) {
        const auto page = validate_document(*doc);
        ctx.out << "parse: ok\n";
        ctx.out << "page: " << (page.empty() ? "single page, ok" : "violates one-page rule") << "\n";
        for (const auto& d : page) ctx.out << "diagnostic: @" << d.offset << " " << d.message << "\n";
      } else {
        ctx.out << "parse: raw text (" << parsed.diagnostics.size() << " diagnostic"
                << (parsed.diagnostics.size() == 1 ? "" : "s") << ")\n";
        for (const auto& d : parsed.diagnostics) {
          auto [line, column] = detail::line_column(text, d.offset);
          ctx.out << "diagnostic: " << line << ":" << column << " " << d.message << "\n";
        }
      }
      for (const auto& ref : refs) {
        ctx.out << "feedback: " << render_feedback(compare(size, ref), locale) << "\n";
      }
      return kExitOk;
    }

    if (*encode) {
      ctx.out << encode_permalink(EditorState{detail::read_all(ctx.in), Origin::typed}).encoded << "\n";
      return kExitOk;
    }
    if (*decode) {
      std::string link = detail::read_all(ctx.in);
      const auto first = link.find_first_not_of(" \t\r\n");
      const auto last = link.find_last_not_of(" \t\r\n");
      link = first == std::string::npos ? std::string() : link.substr(first, last - first + 1);
      ctx.out << decode_permalink(link).source_text;
      return kExitOk;
    }

    if (*bm_add || *bm_list) {
      const std::string path = store_path.empty() ? detail::default_store_path(ctx) : store_path;
      BookmarkStore store(std::make_shared<FileStorage>(path));
      if (*bm_add) {
        std::string text = add_file.empty() ? detail::read_all(ctx.in) : detail::read_file(add_file);
        store.add(label, EditorState{std::move(text), Origin::restored}, ctx.now_ms());
        ctx.out << "bookmarked \"" << label << "\" (" << store.size() << " total)\n";
        return kExitOk;
      }
      const auto items = store.list();
      if (list_json) {
        ctx.out << bookmarks_to_json(items);
      } else {
        for (const auto& b : items) {
          ctx.out << b.created_at << "\t" << b.label << "\t" << b.state.source_text.size() << " bytes\n";
        }
      }
      return kExitOk;
    }

    if (*audit) {
      const AuditReport report = audit_patterns();
      ctx.out << pattern_manifest_json(report).dump(2) << "\n";
      return report.passed() ? kExitOk : kExitValidation;
    }
  } catch (const Error& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  ctx.err << app.help();
  return kExitUsage;
}

}  // namespace pocketforge
