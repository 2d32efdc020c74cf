#include "pocketforge/permalink.hpp"

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles/reference_inflate.hpp"
#include "oracles/text_fuzz.hpp"
#include "pocketforge/defaults.hpp"
#include "pocketforge/document.hpp"

using namespace pocketforge;

namespace {

// From tests/oracles/permalink_golden.py (Python zlib, level 9, raw, memLevel 8).
constexpr std::string_view kGoldenSpan = "v1.sykuSMyzq7DRB9MA";
constexpr std::string_view kGoldenEmpty = "v1.AwA";
constexpr std::string_view kGoldenAccents = "v1.yzi8MicnX6H88LainBSFDGQeAA";

bool url_unreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '_' || c == '.' || c == '~';
}

std::string payload_text(std::string_view permalink) {
  const auto bytes = base64url_decode(permalink.substr(3));
  EXPECT_TRUE(bytes.has_value());
  const auto text = oracle::reference_inflate(*bytes);
  EXPECT_TRUE(text.has_value());
  return text.value_or("");
}

}  // namespace

TEST(Base64Url, KnownVectors) {
  auto enc = [](std::string_view s) {
    return base64url_encode({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
  };
  // RFC 4648 test vectors, unpadded.
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg");
  EXPECT_EQ(enc("fo"), "Zm8");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foob"), "Zm9vYg");
  EXPECT_EQ(enc("fooba"), "Zm9vYmE");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  const std::uint8_t hi[] = {0xFB, 0xFF};
  EXPECT_EQ(base64url_encode(hi), "-_8");
}

TEST(Base64Url, RejectsNonCanonicalInput) {
  EXPECT_FALSE(base64url_decode("Zg==").has_value());
  EXPECT_FALSE(base64url_decode("Z").has_value());
  EXPECT_FALSE(base64url_decode("Zh").has_value());  // nonzero trailing bits
  EXPECT_FALSE(base64url_decode("Zm9v+A").has_value());
  EXPECT_TRUE(base64url_decode("").has_value());
}

TEST(Base64Url, RoundTripsRandomBytes) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::uint8_t> bytes(rng() % 50);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(base64url_decode(base64url_encode(bytes)), bytes);
  }
}

TEST(EncodePermalink, GoldenVectors) {
  EXPECT_EQ(encode_permalink({"<span>x</span>", Origin::typed}).encoded, kGoldenSpan);
  EXPECT_EQ(encode_permalink({"", Origin::typed}).encoded, kGoldenEmpty);
  EXPECT_EQ(encode_permalink({"h\xC3\xA9llo w\xC3\xB6rld h\xC3\xA9llo w\xC3\xB6rld", Origin::typed}).encoded,
            kGoldenAccents);
  EXPECT_EQ(encode_permalink({"<span>x</span>", Origin::typed}).version, 1);
}

TEST(EncodePermalink, GoldenPayloadsInflateWithReferenceDecoder) {
  EXPECT_EQ(payload_text(kGoldenSpan), "<span>x</span>");
  EXPECT_EQ(payload_text(kGoldenEmpty), "");
}

TEST(EncodePermalink, OnlyUnreservedCharacters) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto link = encode_permalink({oracle::random_utf8(rng, 200).text, Origin::typed});
    EXPECT_TRUE(link.encoded.starts_with("v1."));
    for (char c : link.encoded) ASSERT_TRUE(url_unreserved(c)) << link.encoded;
  }
}

TEST(EncodePermalink, CompressesTypicalArtifacts) {
  std::string page;
  std::uint64_t seed = 0;
  while (page.size() < 5000) page += serialize(generate(default_tileset(), Seed{seed++}));
  page.resize(5120);
  const auto link = encode_permalink({page, Origin::generated});
  EXPECT_LE(link.encoded.size(), 4096u);
  EXPECT_LE(link.encoded.size(), page.size() + 64);
}

TEST(EncodePermalink, IncompressibleInputStaysBounded) {
  std::mt19937_64 rng(5);
  std::string noise;
  for (int i = 0; i < 3000; ++i) noise += static_cast<char>(0x21 + rng() % 94);
  const auto link = encode_permalink({noise, Origin::typed});
  // Stored blocks cost 5 bytes per 64 KiB; base64 adds a third.
  EXPECT_LE(link.encoded.size(), (noise.size() + 16) * 4 / 3 + 8);
}

TEST(DecodePermalink, RoundTrip) {
  const auto s = decode_permalink(kGoldenSpan);
  EXPECT_EQ(s.source_text, "<span>x</span>");
  EXPECT_EQ(s.origin, Origin::restored);
}

TEST(DecodePermalink, EmptyTextComesBackTyped) {
  const auto s = decode_permalink(kGoldenEmpty);
  EXPECT_EQ(s.source_text, "");
  EXPECT_EQ(s.origin, Origin::typed);
  EXPECT_TRUE(s.valid());
}

TEST(DecodePermalink, RejectsBadInput) {
  for (std::string_view bad : {"!!!", "", "v1.", "v1.!!!", "v2.sykuSMyzq7DRB9MA", "sykuSMyzq7DRB9MA",
                               "v1.sykuSMyzq7DRB9M", "v1.sykuSMyzq7DRB9MAA", "v1.sykuSMyzq7DRB9MA==",
                               "v1.AAAA", "v1.____"}) {
    EXPECT_THROW(decode_permalink(bad), DecodeError) << bad;
  }
}

TEST(DecodePermalink, RejectsEveryTruncation) {
  for (auto golden : {kGoldenSpan, kGoldenAccents, kGoldenEmpty}) {
    for (std::size_t n = 0; n < golden.size(); ++n) {
      EXPECT_THROW(decode_permalink(golden.substr(0, n)), DecodeError) << golden.substr(0, n);
    }
  }
}

TEST(DecodePermalink, RejectsInvalidUtf8Payload) {
  // Raw DEFLATE stored block holding the single byte 0xFF.
  const std::uint8_t stream[] = {0x01, 0x01, 0x00, 0xFE, 0xFF, 0xFF};
  EXPECT_THROW(decode_permalink("v1." + base64url_encode(stream)), DecodeError);
}

TEST(DecodePermalink, RejectsOversizedPayload) {
  const std::string big(kMaxPermalinkText + 1, 'a');
  const auto link = encode_permalink({big, Origin::typed});
  EXPECT_THROW(decode_permalink(link.encoded), DecodeError);
}

TEST(PermalinkProperties, RoundTripFuzz) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10000; ++i) {
    const std::string text = oracle::random_utf8(rng, 120).text;
    const auto link = encode_permalink({text, Origin::typed});
    ASSERT_EQ(decode_permalink(link.encoded).source_text, text);
  }
}

TEST(PermalinkProperties, ReferenceDecoderAgrees) {
  std::mt19937_64 rng(78);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = (i % 3 == 0) ? oracle::random_markup(rng, 300) : oracle::random_utf8(rng, 400).text;
    ASSERT_EQ(payload_text(encode_permalink({text, Origin::typed}).encoded), text);
  }
}
