#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pocketforge {

struct Node;

struct Attribute {
  std::string name;
  std::string value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Element {
  std::string tag;
  std::vector<Attribute> attributes;
  std::vector<Node> children;

  const Attribute* find_attribute(std::string_view name) const {
    auto it = std::find_if(attributes.begin(), attributes.end(),
                           [&](const Attribute& a) { return a.name == name; });
    return it == attributes.end() ? nullptr : &*it;
  }

  friend bool operator==(const Element&, const Element&) = default;
};

struct Text {
  std::string value;
  friend bool operator==(const Text&, const Text&) = default;
};

struct Comment {
  std::string value;
  friend bool operator==(const Comment&, const Comment&) = default;
};

struct Node {
  std::variant<Element, Text, Comment> value;

  Node(Element e) : value(std::move(e)) {}
  Node(Text t) : value(std::move(t)) {}
  Node(Comment c) : value(std::move(c)) {}

  const Element* as_element() const { return std::get_if<Element>(&value); }
  Element* as_element() { return std::get_if<Element>(&value); }
  const Text* as_text() const { return std::get_if<Text>(&value); }

  friend bool operator==(const Node&, const Node&) = default;
};

/// A single-page HTML artifact: optional doctype plus the top-level nodes.
/// A compliant page has exactly one top-level element, `html`.
struct Document {
  std::optional<std::string> doctype;
  std::vector<Node> children;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Byte offset into some text plus a human-readable message.
struct Diagnostic {
  std::size_t offset = 0;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Builders.
inline Element make_element(std::string tag, std::vector<Attribute> attributes = {},
                            std::vector<Node> children = {}) {
  return Element{std::move(tag), std::move(attributes), std::move(children)};
}
inline Text make_text(std::string value) { return Text{std::move(value)}; }
inline Comment make_comment(std::string value) { return Comment{std::move(value)}; }

inline bool is_void_element(std::string_view tag) {
  static constexpr std::string_view kVoid[] = {
      "area", "base", "br",   "col",   "embed",  "hr",    "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(std::begin(kVoid), std::end(kVoid), tag) != std::end(kVoid);
}

/// Elements whose content is kept verbatim: no entity decoding, no escaping.
inline bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style";
}

namespace detail {

inline void append_escaped_text(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

inline void append_escaped_attribute(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

// Serializes in normal form and reports each element's start offset to
// `visit`, which lets validation point into the canonical text.
template <typename Visitor>
void serialize_node(std::string& out, const Node& node, bool raw_parent, Visitor&& visit) {
  if (const auto* el = node.as_element()) {
    visit(*el, out.size());
    out += '<';
    out += el->tag;
    for (const auto& attr : el->attributes) {
      out += ' ';
      out += attr.name;
      out += "=\"";
      append_escaped_attribute(out, attr.value);
      out += '"';
    }
    out += '>';
    if (is_void_element(el->tag)) return;
    const bool raw = is_raw_text_element(el->tag);
    for (const auto& child : el->children) serialize_node(out, child, raw, visit);
    out += "</";
    out += el->tag;
    out += '>';
  } else if (const auto* text = node.as_text()) {
    if (raw_parent) {
      out += text->value;
    } else {
      append_escaped_text(out, text->value);
    }
  } else {
    out += "<!--";
    out += std::get<Comment>(node.value).value;
    out += "-->";
  }
}

template <typename Visitor>
std::string serialize_with(const Document& doc, Visitor&& visit) {
  std::string out;
  if (doc.doctype) {
    out += "<!DOCTYPE ";
    out += *doc.doctype;
    out += '>';
  }
  for (const auto& child : doc.children) serialize_node(out, child, false, visit);
  return out;
}

}  // namespace detail

/// Normal form: lowercase tags, every attribute double-quoted, no
/// self-closing slash, void elements without end tags. Children of void
/// elements are not emitted.
inline std::string serialize(const Document& doc) {
  return detail::serialize_with(doc, [](const Element&, std::size_t) {});
}

inline std::string serialize(const Node& node) {
  std::string out;
  detail::serialize_node(out, node, false, [](const Element&, std::size_t) {});
  return out;
}

/// Checks the one-page-per-project constraint. Offsets point into
/// serialize(doc).
inline std::vector<Diagnostic> validate_document(const Document& doc) {
  std::vector<Diagnostic> diags;

  std::size_t html_roots = 0;
  std::size_t other_roots = 0;
  for (const auto& child : doc.children) {
    if (const auto* el = child.as_element()) {
      (el->tag == "html" ? html_roots : other_roots) += 1;
    } else if (const auto* text = child.as_text()) {
      const bool blank = std::all_of(text->value.begin(), text->value.end(), [](char c) {
        return c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f';
      });
      if (!blank) ++other_roots;
    }
  }
  if (html_roots != 1 || other_roots != 0) {
    diags.push_back({0, "page must have exactly one <html> root and no content outside it (found " +
                            std::to_string(html_roots) + " <html> root(s) and " +
                            std::to_string(other_roots) + " other top-level node(s))"});
  }

  auto is_top_level = [&](const Element& el) {
    return std::any_of(doc.children.begin(), doc.children.end(),
                       [&](const Node& n) { return n.as_element() == &el; });
  };
  auto visit = [&](const Element& el, std::size_t offset) {
    if (el.tag == "html" && !is_top_level(el)) {
      diags.push_back({offset, "nested <html> element"});
    }
    if (el.tag == "frame" || el.tag == "frameset") {
      diags.push_back({offset, "<" + el.tag + "> embeds another page; one page per project"});
      return;
    }
    if (el.tag == "iframe" || el.tag == "embed" || el.tag == "object") {
      const Attribute* ref = el.find_attribute(el.tag == "object" ? "data" : "src");
      if (ref == nullptr) return;
      const std::string_view url = ref->value;
      const bool inline_url = url.empty() || url.starts_with("data:") || url.starts_with("about:");
      if (!inline_url) {
        diags.push_back({offset, "<" + el.tag + "> embeds another page (" + ref->value +
                                     "); one page per project"});
      }
    }
  };
  detail::serialize_with(doc, visit);
  return diags;
}

}  // namespace pocketforge
