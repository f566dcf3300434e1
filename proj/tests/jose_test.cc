// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "jose/base64url.hpp"
#include "jose/crypto.hpp"
#include "jose/jwks.hpp"
#include "jose/jws.hpp"

namespace oidclab::jose {
namespace {

struct KatVector {
  std::string name, key, kid, payload, compact;
};

std::vector<KatVector> load_kat() {
  std::ifstream in(std::string(OIDCLAB_FIXTURE_DIR) + "/jose_kat.tsv");
  std::vector<KatVector> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() != 5) throw std::runtime_error("bad fixture line: " + line);
    out.push_back({f[0], f[1], f[2], f[3], f[4]});
  }
  return out;
}

std::string unhex(std::string_view hex) {
  std::string out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<char>(std::stoi(std::string(hex.substr(i, 2)), nullptr, 16)));
  }
  return out;
}

ErrorCode verify_error(std::string_view compact, const Key& key) {
  try {
    jws_verify(compact, key);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

// RFC 4231 test cases 1, 2, 3, 4 and 6.
TEST(HmacTest, Rfc4231Vectors) {
  EXPECT_EQ(to_hex(hmac_sha256(std::string(20, '\x0b'), "Hi There")),
            "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
  EXPECT_EQ(to_hex(hmac_sha256("Jefe", "what do ya want for nothing?")),
            "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
  EXPECT_EQ(to_hex(hmac_sha256(std::string(20, '\xaa'), std::string(50, '\xdd'))),
            "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe");
  EXPECT_EQ(to_hex(hmac_sha256(unhex("0102030405060708090a0b0c0d0e0f10111213141516171819"),
                               std::string(50, '\xcd'))),
            "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b");
  EXPECT_EQ(to_hex(hmac_sha256(std::string(131, '\xaa'),
                               "Test Using Larger Than Block-Size Key - Hash Key First")),
            "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54");
}

TEST(HmacTest, Sha256EmptyString) {
  EXPECT_EQ(to_hex(sha256("")), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(HmacTest, ConstantTimeEqual) {
  EXPECT_TRUE(constant_time_equal("abc", "abc"));
  EXPECT_FALSE(constant_time_equal("abc", "abd"));
  EXPECT_FALSE(constant_time_equal("abc", "abcd"));
}

TEST(Base64UrlTest, KnownValues) {
  EXPECT_EQ(base64url_encode(""), "");
  EXPECT_EQ(base64url_encode("f"), "Zg");
  EXPECT_EQ(base64url_encode("fo"), "Zm8");
  EXPECT_EQ(base64url_encode("foo"), "Zm9v");
  EXPECT_EQ(base64url_encode("\xfb\xff"), "-_8");
  EXPECT_EQ(base64url_decode("-_8"), std::string("\xfb\xff"));
}

TEST(Base64UrlTest, RejectsPaddingAndNonCanonicalTails) {
  EXPECT_FALSE(base64url_decode("Zg==").has_value());
  EXPECT_FALSE(base64url_decode("Zh").has_value());
  EXPECT_FALSE(base64url_decode("Z").has_value());
  EXPECT_FALSE(base64url_decode("Zm9v+").has_value());
}

TEST(Base64UrlTest, RandomRoundTrip) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    std::string bytes(rng() % 64, '\0');
    for (auto& c : bytes) c = static_cast<char>(rng());
    EXPECT_EQ(base64url_decode(base64url_encode(bytes)), bytes);
  }
}

TEST(JwsKatTest, MatchesIndependentOracle) {
  auto vectors = load_kat();
  ASSERT_GE(vectors.size(), 3u);
  for (const auto& v : vectors) {
    Key key = Key::symmetric(v.kid, v.key);
    Json payload = Json::parse(v.payload);
    EXPECT_EQ(jws_sign(JoseHeader{}, payload, key), v.compact) << v.name;
    EXPECT_EQ(jws_verify(v.compact, key), payload) << v.name;
  }
}

TEST(JwsKatTest, FlippedKeyVectorFailsUnderOriginalKey) {
  for (const auto& v : load_kat()) {
    if (v.name != "id_token_example_flipped_key") continue;
    EXPECT_EQ(verify_error(v.compact, Key::symmetric("", "secret0123456789")), ErrorCode::kBadSignature);
  }
}

TEST(JwsTest, RejectsShortKey) {
  EXPECT_THROW(Key::symmetric("k", "short"), Error);
}

TEST(JwsTest, RejectsAlgNone) {
  std::string compact = base64url_encode(R"({"alg":"none"})") + "." + base64url_encode("{}") + ".";
  EXPECT_EQ(verify_error(compact, Key::symmetric("", std::string(32, 'k'))), ErrorCode::kUnsupportedAlgorithm);
}

TEST(JwsTest, RejectsWrongSegmentCount) {
  Key key = Key::symmetric("", std::string(32, 'k'));
  EXPECT_EQ(verify_error("a.b", key), ErrorCode::kMalformedToken);
  EXPECT_EQ(verify_error("a.b.c.d", key), ErrorCode::kMalformedToken);
}

TEST(JwsTest, PrivateKeySimulationVerifiesWithPublicRecord) {
  Key priv = Key::private_key("pk-1", std::string(32, 'p'));
  std::string compact = jws_sign(JoseHeader{std::string(kAlgPrivateKeySim), ""}, Json{{"x", 1}}, priv);
  EXPECT_EQ(jws_verify(compact, priv.public_record())["x"], 1);
  EXPECT_EQ(peek_header(compact)["kid"], "pk-1");
}

TEST(JwsPropertyTest, SignVerifyRoundTripAndSingleByteTamper) {
  std::mt19937_64 rng(20260101);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_";
  for (int i = 0; i < 1000; ++i) {
    std::string material(16 + rng() % 48, '\0');
    for (auto& c : material) c = static_cast<char>(rng());
    Key key = Key::symmetric("k" + std::to_string(i), material);
    Json claims = Json::object();
    const int fields = static_cast<int>(rng() % 6);
    for (int f = 0; f < fields; ++f) claims["c" + std::to_string(f)] = std::to_string(rng());
    claims["n"] = static_cast<std::int64_t>(rng() % 100000);

    std::string compact = jws_sign(JoseHeader{}, claims, key);
    ASSERT_EQ(jws_verify(compact, key), claims) << i;

    std::string tampered = compact;
    std::size_t pos = rng() % tampered.size();
    if (tampered[pos] == '.') pos = (pos + 1) % tampered.size();
    char replacement = alphabet[rng() % alphabet.size()];
    if (replacement == tampered[pos]) replacement = replacement == 'A' ? 'B' : 'A';
    tampered[pos] = replacement;
    EXPECT_THROW(jws_verify(tampered, key), Error) << "case " << i << " pos " << pos;

    std::string other(material);
    other[rng() % other.size()] ^= 0x01;
    EXPECT_EQ(verify_error(compact, Key::symmetric(key.key_id, other)), ErrorCode::kBadSignature) << i;
  }
}

TEST(JwksTest, RoundTripAndSelectByKid) {
  Key a = Key::symmetric("a", std::string(32, 'a'));
  Key b = Key::symmetric("b", std::string(32, 'b'));
  KeySet set = parse_jwks(jwks_to_json({a, b}));
  ASSERT_EQ(set.size(), 2u);
  std::string compact = jws_sign(JoseHeader{}, Json::object(), b);
  auto chosen = select_key(set, compact);
  ASSERT_TRUE(chosen.has_value());
  EXPECT_EQ(chosen->key_id, "b");
}

TEST(JwksTest, MissingKeysArrayIsMalformed) {
  try {
    parse_jwks(Json{{"service", "intranet admin console"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedMetadata);
  }
}

TEST(ClientAssertionTest, ClaimsNameTokenEndpoint) {
  Key key = Key::symmetric("", std::string(32, 's'));
  Url token = Url::parse("https://honestop.com/token");
  ClientAssertion a = build_client_assertion("cid", token, key, 1700000000);
  Json claims = jws_verify(a.jwt, key);
  EXPECT_EQ(claims["iss"], "cid");
  EXPECT_EQ(claims["sub"], "cid");
  EXPECT_EQ(claims["aud"], "https://honestop.com/token");
  EXPECT_EQ(claims["exp"], 1700000000 + kAssertionLifetime);
}

}  // namespace
}  // namespace oidclab::jose
