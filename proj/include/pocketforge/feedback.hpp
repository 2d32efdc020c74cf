#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pocketforge/error.hpp"

namespace pocketforge {

struct SizeReport {
  std::uint64_t bytes = 0;
  // steady_clock tick at measurement; only meaningful relative to other ticks.
  std::int64_t measured_at = 0;
};

struct ReferencePage {
  std::string name;
  std::uint64_t bytes = 1;
  std::chrono::year_month_day recorded_on{};
};

/// Exact non-negative rational, always in lowest terms with den > 0.
class Ratio {
 public:
  constexpr Ratio(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ValidationError("ratio with zero denominator");
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  constexpr std::uint64_t num() const { return num_; }
  constexpr std::uint64_t den() const { return den_; }

  friend constexpr bool operator==(const Ratio&, const Ratio&) = default;
  friend constexpr std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    using wide = unsigned __int128;
    return static_cast<wide>(a.num_) * b.den_ <=> static_cast<wide>(b.num_) * a.den_;
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

struct Comparison {
  SizeReport subject;
  ReferencePage reference;
  Ratio ratio{0, 1};  // subject.bytes / reference.bytes
};

/// Size is the UTF-8 byte count of the text exactly as given.
inline SizeReport measure_size(std::string_view text) {
  return SizeReport{text.size(), std::chrono::steady_clock::now().time_since_epoch().count()};
}

inline Comparison compare(const SizeReport& report, const ReferencePage& ref) {
  if (ref.bytes == 0) throw ValidationError("reference page \"" + ref.name + "\" has zero bytes");
  return Comparison{report, ref, Ratio(report.bytes, ref.bytes)};
}

namespace detail {

struct NumberStyle {
  std::string_view group;
  std::string_view decimal;
};

// Only separators vary by locale; digits and values never do.
inline NumberStyle number_style(std::string_view locale) {
  const std::string_view lang = locale.substr(0, locale.find_first_of("-_"));
  if (lang == "de" || lang == "es" || lang == "it" || lang == "nl" || lang == "pt" ||
      lang == "id" || lang == "tr") {
    return {".", ","};
  }
  if (lang == "fr" || lang == "ru" || lang == "pl" || lang == "sv" || lang == "cs") {
    return {" ", ","};
  }
  return {",", "."};
}

inline std::string group_digits(std::uint64_t value, std::string_view sep) {
  std::string digits = std::to_string(value);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out += sep;
    out += digits[i];
  }
  return out;
}

// num/den rounded half-up to one decimal place.
inline std::string one_decimal(std::uint64_t num, std::uint64_t den, const NumberStyle& style) {
  using wide = unsigned __int128;
  const wide tenths = (static_cast<wide>(num) * 20 + den) / (static_cast<wide>(den) * 2);
  return group_digits(static_cast<std::uint64_t>(tenths / 10), style.group) +
         std::string(style.decimal) + std::to_string(static_cast<unsigned>(tenths % 10));
}

inline std::chrono::year_month_day parse_iso_date(const std::string& s) {
  auto digits = [&](std::size_t from, std::size_t n) {
    int v = 0;
    for (std::size_t i = from; i < from + n; ++i) {
      if (s[i] < '0' || s[i] > '9') throw ValidationError("bad date \"" + s + "\"");
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    throw ValidationError("date \"" + s + "\" is not YYYY-MM-DD");
  }
  const std::chrono::year_month_day d{std::chrono::year{digits(0, 4)},
                                      std::chrono::month{static_cast<unsigned>(digits(5, 2))},
                                      std::chrono::day{static_cast<unsigned>(digits(8, 2))}};
  if (!d.ok()) throw ValidationError("date \"" + s + "\" does not exist");
  return d;
}

}  // namespace detail

inline std::string format_iso_date(const std::chrono::year_month_day& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

/// The size, a dash, then "<N>× smaller than <name>", "<N>× larger than"
/// or "same size as". N is rounded half-up to one decimal here and nowhere else.
inline std::string render_feedback(const Comparison& c, std::string_view locale = "en") {
  const auto style = detail::number_style(locale);
  const std::uint64_t bytes = c.subject.bytes;
  std::string msg = detail::group_digits(bytes, style.group) + (bytes == 1 ? " byte" : " bytes") +
                    " — ";
  const Ratio& r = c.ratio;
  if (r.num() == r.den()) {
    msg += "same size as ";
  } else if (r.num() == 0) {
    msg += "infinitely smaller than ";
  } else if (r.num() < r.den()) {
    msg += detail::one_decimal(r.den(), r.num(), style) + "× smaller than ";
  } else {
    msg += detail::one_decimal(r.num(), r.den(), style) + "× larger than ";
  }
  msg += c.reference.name;
  return msg;
}

/// Reads a JSON list of {"name", "bytes", "recorded_on"}. Zero-byte
/// references and unknown keys are rejected.
inline std::vector<ReferencePage> load_reference_table(std::string_view source) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed reference table: " + std::string(e.what()));
  }
  if (!root.is_array()) throw ValidationError("reference table must be a JSON list");
  std::vector<ReferencePage> pages;
  for (const auto& item : root) {
    if (!item.is_object() || item.size() != 3 || !item.contains("name") || !item.contains("bytes") ||
        !item.contains("recorded_on")) {
      throw ValidationError("reference entries need exactly name, bytes and recorded_on");
    }
    if (!item["name"].is_string() || item["name"].get_ref<const std::string&>().empty()) {
      throw ValidationError("reference name must be a nonempty string");
    }
    ReferencePage page;
    page.name = item["name"].get<std::string>();
    if (!item["bytes"].is_number_unsigned() || item["bytes"].get<std::uint64_t>() == 0) {
      throw ValidationError("reference \"" + page.name + "\" must have a positive byte count");
    }
    page.bytes = item["bytes"].get<std::uint64_t>();
    if (!item["recorded_on"].is_string()) {
      throw ValidationError("reference \"" + page.name + "\" recorded_on must be a string");
    }
    page.recorded_on = detail::parse_iso_date(item["recorded_on"].get<std::string>());
    pages.push_back(std::move(page));
  }
  return pages;
}

}  // namespace pocketforge
