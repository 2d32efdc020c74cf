#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "pocketforge/base64url.hpp"
#include "pocketforge/error.hpp"
#include "pocketforge/history.hpp"
#include "pocketforge/utf8.hpp"

namespace pocketforge {

/// URL-safe, self-contained encoding of the editor text, carried in the
/// URL fragment. Wire format: "v1." + base64url(raw DEFLATE(utf8 text)).
struct Permalink {
  std::string encoded;
  int version = 1;
};

inline constexpr std::string_view kPermalinkPrefix = "v1.";
// Decompressed size cap; artifacts are a few KB.
inline constexpr std::size_t kMaxPermalinkText = std::size_t{8} << 20;

namespace detail {

// Pinned stream settings.
inline constexpr int kDeflateLevel = 9;
inline constexpr int kDeflateWindowBits = -15;  // raw stream, 32 KiB window
inline constexpr int kDeflateMemLevel = 8;

inline std::vector<std::uint8_t> deflate_raw(std::string_view text) {
  z_stream zs{};
  if (deflateInit2(&zs, kDeflateLevel, Z_DEFLATED, kDeflateWindowBits, kDeflateMemLevel,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error("deflateInit2 failed");
  }
  std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(text.size())));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
  zs.avail_in = static_cast<uInt>(text.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error("deflate did not finish");
  out.resize(produced);
  return out;
}

// Requires exactly one complete stream with nothing after it.
inline std::string inflate_raw(std::span<const std::uint8_t> data) {
  z_stream zs{};
  if (inflateInit2(&zs, kDeflateWindowBits) != Z_OK) throw Error("inflateInit2 failed");
  zs.next_in = const_cast<Bytef*>(data.data());
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buf[16384];
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buf, sizeof buf - zs.avail_out);
    if (out.size() > kMaxPermalinkText) {
      inflateEnd(&zs);
      throw DecodeError("permalink expands past the size limit");
    }
  }
  const bool trailing = zs.avail_in != 0;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw DecodeError("permalink payload is truncated or corrupt");
  if (trailing) throw DecodeError("permalink has data after the end of the stream");
  return out;
}

}  // namespace detail

inline Permalink encode_permalink(const EditorState& state) {
  const auto compressed = detail::deflate_raw(state.source_text);
  return Permalink{std::string(kPermalinkPrefix) + base64url_encode(compressed), 1};
}

/// Inverse of encode_permalink. The result is a restored state, except
/// that an empty text comes back as typed (only typed states may be empty).
inline EditorState decode_permalink(std::string_view encoded) {
  if (!encoded.starts_with(kPermalinkPrefix)) {
    if (encoded.size() > 1 && encoded.front() == 'v' && encoded.find('.') != std::string_view::npos) {
      throw DecodeError("unsupported permalink version \"" +
                        std::string(encoded.substr(0, encoded.find('.'))) + "\"");
    }
    throw DecodeError("not a permalink (missing \"v1.\" prefix)");
  }
  const auto bytes = base64url_decode(encoded.substr(kPermalinkPrefix.size()));
  if (!bytes) throw DecodeError("permalink is not valid base64url");
  std::string text = detail::inflate_raw(*bytes);
  if (!is_valid_utf8(text)) throw DecodeError("permalink text is not valid UTF-8");
  const Origin origin = text.empty() ? Origin::typed : Origin::restored;
  return EditorState{std::move(text), origin};
}

}  // namespace pocketforge
