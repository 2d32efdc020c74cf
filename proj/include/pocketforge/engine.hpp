#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pocketforge/defaults.hpp"
#include "pocketforge/document.hpp"
#include "pocketforge/error.hpp"
#include "pocketforge/feedback.hpp"
#include "pocketforge/history.hpp"
#include "pocketforge/html_parser.hpp"
#include "pocketforge/permalink.hpp"
#include "pocketforge/share.hpp"
#include "pocketforge/tile_grammar.hpp"

namespace pocketforge {

/// Request/response boundary between the engine and a UI. Every request is
/// a JSON object {"op": name, ...}; every response is {"ok": true, ...} or
/// {"ok": false, "error": message}. Seeds travel as decimal strings.
///
/// State-changing ops ("commit", "undo", "redo", "random", "restore")
/// answer with the editor view: text, preview html, size, feedback lines
/// and button enablement.
class EngineSession {
 public:
  EngineSession(TileSet tileset, std::vector<ReferencePage> references,
                std::shared_ptr<StorageAdapter> storage, std::string locale = "en")
      : tileset_(std::move(tileset)),
        references_(std::move(references)),
        bookmarks_(std::move(storage)),
        locale_(std::move(locale)) {}

  nlohmann::json handle(const nlohmann::json& request) {
    try {
      if (!request.is_object() || !request.contains("op") || !request["op"].is_string()) {
        throw ValidationError("request needs a string \"op\"");
      }
      const std::string& op = request["op"].get_ref<const std::string&>();
      if (op == "generate") return ok({{"html", serialize(generate(tileset_, seed_of(request)))}});
      if (op == "random") {
        return commit_and_view(serialize(generate(tileset_, seed_of(request))), Origin::generated,
                               request);
      }
      if (op == "commit") return commit_and_view(text_of(request, "text"), Origin::typed, request);
      if (op == "restore") {
        try {
          EditorState restored = decode_permalink(text_of(request, "permalink"));
          return commit_and_view(std::move(restored.source_text), restored.origin, request);
        } catch (const DecodeError& e) {
          auto view = commit_and_view(serialize(generate(tileset_, seed_of(request))),
                                      Origin::generated, request);
          view["notice"] = std::string("could not open shared link: ") + e.what();
          return view;
        }
      }
      if (op == "undo" || op == "redo") {
        const bool moved = op == "undo" ? history_.undo().has_value() : history_.redo().has_value();
        auto view = view_json();
        view["moved"] = moved;
        return view;
      }
      if (op == "analyze") return ok(analysis(text_of(request, "text")));
      if (op == "encode_permalink") {
        return ok({{"permalink", encode_permalink(EditorState{text_of(request, "text"), Origin::typed}).encoded}});
      }
      if (op == "decode_permalink") {
        EditorState s = decode_permalink(text_of(request, "permalink"));
        return ok({{"text", s.source_text}, {"origin", to_string(s.origin)}});
      }
      if (op == "export_html") {
        return ok({{"file", export_html(EditorState{text_of(request, "text"), Origin::typed})}});
      }
      if (op == "bookmark_add") {
        if (!history_.present()) throw ValidationError("nothing to bookmark yet");
        bookmarks_.add(text_of(request, "label"), *history_.present(), now_of(request));
        return ok({{"bookmarks", bookmark_list_json()}});
      }
      if (op == "bookmark_list") return ok({{"bookmarks", bookmark_list_json()}});
      throw ValidationError("unknown op \"" + op + "\"");
    } catch (const Error& e) {
      return nlohmann::json{{"ok", false}, {"error", e.what()}};
    } catch (const nlohmann::json::exception& e) {
      return nlohmann::json{{"ok", false}, {"error", e.what()}};
    }
  }

  const HistoryStack& history() const { return history_; }

 private:
  static nlohmann::json ok(nlohmann::json body) {
    body["ok"] = true;
    return body;
  }

  static std::string text_of(const nlohmann::json& req, const char* key) {
    if (!req.contains(key) || !req[key].is_string()) {
      throw ValidationError(std::string("request needs a string \"") + key + "\"");
    }
    return req[key].get<std::string>();
  }

  static Seed seed_of(const nlohmann::json& req) {
    if (!req.contains("seed")) throw ValidationError("request needs a \"seed\"");
    const auto& s = req["seed"];
    if (s.is_number_unsigned()) return Seed{s.get<std::uint64_t>()};
    if (!s.is_string()) throw ValidationError("seed must be a decimal string");
    const std::string& digits = s.get_ref<const std::string&>();
    if (digits.empty() || digits.size() > 20) throw ValidationError("bad seed \"" + digits + "\"");
    unsigned __int128 v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw ValidationError("bad seed \"" + digits + "\"");
      v = v * 10 + static_cast<unsigned>(c - '0');
    }
    if (v > UINT64_MAX) throw ValidationError("seed out of range \"" + digits + "\"");
    return Seed{static_cast<std::uint64_t>(v)};
  }

  static std::int64_t now_of(const nlohmann::json& req) {
    if (!req.contains("now_ms") || !req["now_ms"].is_number_integer()) {
      throw ValidationError("request needs an integer \"now_ms\"");
    }
    return req["now_ms"].get<std::int64_t>();
  }

  nlohmann::json commit_and_view(std::string text, Origin origin, const nlohmann::json& req) {
    history_.commit(EditorState{std::move(text), origin}, now_of(req));
    return view_json();
  }

  nlohmann::json analysis(const std::string& text) const {
    const SizeReport size = measure_size(text);
    const ParseResult parsed = parse_html(text);
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& d : parsed.diagnostics) diags.push_back({{"offset", d.offset}, {"message", d.message}});
    if (const Document* doc = parsed.document()) {
      for (const auto& d : validate_document(*doc)) {
        diags.push_back({{"offset", d.offset}, {"message", d.message}});
      }
    }
    nlohmann::json feedback = nlohmann::json::array();
    for (const auto& ref : references_) feedback.push_back(render_feedback(compare(size, ref), locale_));
    return {{"bytes", size.bytes},
            {"parsed", parsed.parsed()},
            {"diagnostics", diags},
            {"feedback", feedback}};
  }

  nlohmann::json view_json() const {
    const std::string text = history_.present() ? history_.present()->source_text : std::string();
    nlohmann::json view = analysis(text);
    view["ok"] = true;
    view["text"] = text;
    // The preview shows the editor text itself; the host frame renders it.
    view["preview_html"] = text;
    view["origin"] = history_.present() ? to_string(history_.present()->origin) : "typed";
    view["can_undo"] = history_.can_undo();
    view["can_redo"] = history_.can_redo();
    return view;
  }

  nlohmann::json bookmark_list_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& b : bookmarks_.list()) {
      out.push_back({{"label", b.label}, {"text", b.state.source_text}, {"created_at", b.created_at}});
    }
    return out;
  }

  TileSet tileset_;
  std::vector<ReferencePage> references_;
  BookmarkStore bookmarks_;
  std::string locale_;
  HistoryStack history_;
};

}  // namespace pocketforge
