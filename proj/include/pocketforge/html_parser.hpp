#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pocketforge/document.hpp"

namespace pocketforge {

/// Input that did not parse cleanly, kept byte-for-byte.
struct RawFallback {
  std::string text;
  friend bool operator==(const RawFallback&, const RawFallback&) = default;
};

struct ParseResult {
  std::variant<Document, RawFallback> outcome;
  std::vector<Diagnostic> diagnostics;

  bool parsed() const { return std::holds_alternative<Document>(outcome); }
  const Document* document() const { return std::get_if<Document>(&outcome); }
  const RawFallback* fallback() const { return std::get_if<RawFallback>(&outcome); }
};

namespace detail {

constexpr bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
constexpr bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_html_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}
constexpr char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

inline bool iequals_prefix(std::string_view s, std::size_t pos, std::string_view lower_prefix) {
  if (s.size() - pos < lower_prefix.size()) return false;
  for (std::size_t i = 0; i < lower_prefix.size(); ++i) {
    if (ascii_lower(s[pos + i]) != lower_prefix[i]) return false;
  }
  return true;
}

class HtmlParser {
 public:
  explicit HtmlParser(std::string_view input) : in_(input) {}

  ParseResult run() {
    Document doc;
    parse_doctype(doc);
    // Stack of open elements; the bottom entry collects top-level nodes.
    open_.push_back(OpenElement{make_element(""), 0});
    while (!halted_ && pos_ < in_.size()) {
      if (in_[pos_] == '<') {
        parse_markup();
      } else {
        parse_text();
      }
    }
    if (!halted_) {
      for (std::size_t i = open_.size(); i-- > 1;) {
        report(open_[i].start, "unclosed <" + open_[i].element.tag + "> element");
      }
    }
    if (!diags_.empty()) {
      return ParseResult{RawFallback{std::string(in_)}, std::move(diags_)};
    }
    doc.children = std::move(open_.front().element.children);
    return ParseResult{std::move(doc), {}};
  }

 private:
  struct OpenElement {
    Element element;
    std::size_t start;
  };

  void report(std::size_t at, std::string message) { diags_.push_back({at, std::move(message)}); }

  // Unrecoverable: stop scanning, the result is a fallback anyway.
  void halt(std::size_t at, std::string message) {
    report(at, std::move(message));
    halted_ = true;
  }

  void append_child(Node node) {
    auto& children = open_.back().element.children;
    if (const Text* t = node.as_text(); t != nullptr && !children.empty()) {
      if (auto* prev = std::get_if<Text>(&children.back().value)) {
        prev->value += t->value;
        return;
      }
    }
    children.push_back(std::move(node));
  }

  void parse_doctype(Document& doc) {
    std::size_t p = 0;
    while (p < in_.size() && is_html_space(in_[p])) ++p;
    if (!iequals_prefix(in_, p, "<!doctype")) return;
    const std::size_t start = p;
    p += 9;
    const std::size_t close = in_.find('>', p);
    if (close == std::string_view::npos) {
      halt(start, "unterminated doctype");
      return;
    }
    std::string_view body = in_.substr(p, close - p);
    while (!body.empty() && is_html_space(body.front())) body.remove_prefix(1);
    while (!body.empty() && is_html_space(body.back())) body.remove_suffix(1);
    if (body.empty() || body.find_first_of("<>") != std::string_view::npos) {
      report(start, "malformed doctype");
    }
    std::string value(body);
    for (char& c : value) c = ascii_lower(c);
    doc.doctype = std::move(value);
    pos_ = close + 1;
  }

  void parse_markup() {
    const std::size_t start = pos_;
    if (in_.substr(pos_).starts_with("<!--")) {
      const std::size_t end = in_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) {
        halt(start, "unterminated comment");
        return;
      }
      append_child(make_comment(std::string(in_.substr(pos_ + 4, end - pos_ - 4))));
      pos_ = end + 3;
      return;
    }
    if (iequals_prefix(in_, pos_, "<!doctype")) {
      report(start, "doctype must come before any content");
      skip_past('>');
      return;
    }
    if (in_.substr(pos_).starts_with("<!") || in_.substr(pos_).starts_with("<?")) {
      report(start, "unsupported markup declaration");
      skip_past('>');
      return;
    }
    if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '/') {
      parse_end_tag();
      return;
    }
    if (pos_ + 1 < in_.size() && is_ascii_alpha(in_[pos_ + 1])) {
      parse_start_tag();
      return;
    }
    report(start, "stray '<' in text; write &lt; instead");
    append_child(make_text("<"));
    ++pos_;
  }

  void skip_past(char c) {
    const std::size_t end = in_.find(c, pos_);
    if (end == std::string_view::npos) {
      halted_ = true;
      pos_ = in_.size();
    } else {
      pos_ = end + 1;
    }
  }

  std::string read_tag_name() {
    std::string name;
    while (pos_ < in_.size() &&
           (is_ascii_alpha(in_[pos_]) || is_ascii_digit(in_[pos_]) || in_[pos_] == '-')) {
      name += ascii_lower(in_[pos_]);
      ++pos_;
    }
    return name;
  }

  void skip_spaces() {
    while (pos_ < in_.size() && is_html_space(in_[pos_])) ++pos_;
  }

  void parse_end_tag() {
    const std::size_t start = pos_;
    pos_ += 2;
    if (pos_ >= in_.size() || !is_ascii_alpha(in_[pos_])) {
      report(start, "malformed end tag");
      skip_past('>');
      return;
    }
    const std::string name = read_tag_name();
    skip_spaces();
    if (pos_ >= in_.size() || in_[pos_] != '>') {
      halt(start, "unterminated end tag </" + name + ">");
      return;
    }
    ++pos_;
    close_element(name, start);
  }

  void close_element(const std::string& name, std::size_t at) {
    if (is_void_element(name)) {
      report(at, "end tag for void element <" + name + ">");
      return;
    }
    std::size_t match = open_.size();
    for (std::size_t i = open_.size(); i-- > 1;) {
      if (open_[i].element.tag == name) {
        match = i;
        break;
      }
    }
    if (match == open_.size()) {
      report(at, "stray end tag </" + name + ">");
      return;
    }
    if (match != open_.size() - 1) {
      report(at, "end tag </" + name + "> closes unclosed <" + open_.back().element.tag + ">");
    }
    while (open_.size() > match) {
      Element done = std::move(open_.back().element);
      open_.pop_back();
      append_child(std::move(done));
    }
  }

  void parse_start_tag() {
    const std::size_t start = pos_;
    ++pos_;
    Element el = make_element(read_tag_name());
    bool self_closing = false;
    for (;;) {
      skip_spaces();
      if (pos_ >= in_.size()) {
        halt(start, "unterminated start tag <" + el.tag + ">");
        return;
      }
      const char c = in_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/' && pos_ + 1 < in_.size() && in_[pos_ + 1] == '>') {
        pos_ += 2;
        self_closing = true;
        break;
      }
      if (!parse_attribute(el)) return;
    }

    if (is_void_element(el.tag)) {
      append_child(std::move(el));
      return;
    }
    if (self_closing) {
      report(start, "self-closing syntax on non-void element <" + el.tag + ">");
    }
    if (is_raw_text_element(el.tag)) {
      parse_raw_text(std::move(el), start);
      return;
    }
    open_.push_back(OpenElement{std::move(el), start});
  }

  bool parse_attribute(Element& el) {
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < in_.size()) {
      const char c = in_[pos_];
      if (is_html_space(c) || c == '=' || c == '>' || c == '/' || c == '"' || c == '\'' ||
          c == '<') {
        break;
      }
      name += ascii_lower(c);
      ++pos_;
    }
    if (name.empty()) {
      report(start, "unexpected character in <" + el.tag + "> tag");
      ++pos_;
      return true;
    }
    std::string value;
    skip_spaces();
    if (pos_ < in_.size() && in_[pos_] == '=') {
      ++pos_;
      skip_spaces();
      if (pos_ >= in_.size()) {
        halt(start, "unterminated attribute " + name);
        return false;
      }
      const char quote = in_[pos_];
      if (quote == '"' || quote == '\'') {
        const std::size_t end = in_.find(quote, pos_ + 1);
        if (end == std::string_view::npos) {
          halt(start, "unterminated attribute value for " + name);
          return false;
        }
        value = decode_entities(in_.substr(pos_ + 1, end - pos_ - 1), pos_ + 1);
        pos_ = end + 1;
      } else {
        const std::size_t begin = pos_;
        while (pos_ < in_.size() && !is_html_space(in_[pos_]) && in_[pos_] != '>' &&
               in_[pos_] != '"' && in_[pos_] != '\'' && in_[pos_] != '=' && in_[pos_] != '<' &&
               in_[pos_] != '`') {
          ++pos_;
        }
        if (pos_ == begin) {
          report(start, "missing value for attribute " + name);
        }
        value = decode_entities(in_.substr(begin, pos_ - begin), begin);
      }
    }
    if (el.find_attribute(name) != nullptr) {
      report(start, "duplicate attribute " + name + " on <" + el.tag + ">");
      return true;
    }
    el.attributes.push_back({std::move(name), std::move(value)});
    return true;
  }

  void parse_raw_text(Element el, std::size_t start) {
    std::size_t search = pos_;
    for (;;) {
      const std::size_t lt = in_.find("</", search);
      if (lt == std::string_view::npos) {
        halt(start, "unclosed <" + el.tag + "> element");
        return;
      }
      const std::size_t after = lt + 2 + el.tag.size();
      if (iequals_prefix(in_, lt + 2, el.tag) &&
          (after >= in_.size() || is_html_space(in_[after]) || in_[after] == '>')) {
        if (lt > pos_) el.children.push_back(make_text(std::string(in_.substr(pos_, lt - pos_))));
        pos_ = lt;
        open_.push_back(OpenElement{std::move(el), start});
        parse_end_tag();
        return;
      }
      search = lt + 2;
    }
  }

  void parse_text() {
    const std::size_t start = pos_;
    const std::size_t end = std::min(in_.find('<', pos_), in_.size());
    pos_ = end;
    append_child(make_text(decode_entities(in_.substr(start, end - start), start)));
  }

  // The five predefined entities; anything else that looks like a
  // character reference is reported, a lone '&' stays literal.
  std::string decode_entities(std::string_view s, std::size_t base) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out += s[i];
        continue;
      }
      std::size_t j = i + 1;
      while (j < s.size() && (is_ascii_alpha(s[j]) || is_ascii_digit(s[j]) || s[j] == '#')) ++j;
      if (j == i + 1 || j >= s.size() || s[j] != ';') {
        out += '&';
        continue;
      }
      const std::string_view name = s.substr(i + 1, j - i - 1);
      if (name == "amp") out += '&';
      else if (name == "lt") out += '<';
      else if (name == "gt") out += '>';
      else if (name == "quot") out += '"';
      else if (name == "apos") out += '\'';
      else {
        report(base + i, "unsupported character reference &" + std::string(name) + ";");
        out.append(s.substr(i, j - i + 1));
      }
      i = j;
    }
    return out;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  bool halted_ = false;
  std::vector<OpenElement> open_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

/// Parses the supported HTML subset. Never throws on any input: clean input
/// yields a Document with no diagnostics, anything else yields the input
/// verbatim plus at least one diagnostic.
inline ParseResult parse_html(std::string_view text) {
  return detail::HtmlParser(text).run();
}

}  // namespace pocketforge
