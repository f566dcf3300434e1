// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "jose/jws.hpp"

#include <array>

#include "core/error.hpp"
#include "jose/base64url.hpp"
#include "jose/crypto.hpp"

namespace oidclab::jose {
namespace {

struct Segments {
  std::string_view header;
  std::string_view payload;
  std::string_view signature;
};

Segments split(std::string_view compact) {
  std::array<std::string_view, 3> parts;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    auto dot = compact.find('.', start);
    if (i < 2) {
      if (dot == std::string_view::npos) fail(ErrorCode::kMalformedToken, "expected three segments");
      parts[i] = compact.substr(start, dot - start);
      start = dot + 1;
    } else {
      if (dot != std::string_view::npos) fail(ErrorCode::kMalformedToken, "expected three segments");
      parts[i] = compact.substr(start);
    }
  }
  if (parts[0].empty()) fail(ErrorCode::kMalformedToken, "empty header");
  return {parts[0], parts[1], parts[2]};
}

Json decode_json_segment(std::string_view segment, const char* what) {
  auto raw = base64url_decode(segment);
  if (!raw) fail(ErrorCode::kMalformedToken, std::string("bad base64url in ") + what);
  auto parsed = Json::parse(*raw, nullptr, false);
  if (parsed.is_discarded()) fail(ErrorCode::kMalformedToken, std::string("bad json in ") + what);
  return parsed;
}

std::string compute_signature(std::string_view alg, const Key& key, std::string_view input) {
  if (alg == kAlgHS256) return hmac_sha256(key.material, input);
  std::string buf = key.material;
  buf.append(input);
  return sha256(buf);
}

}  // namespace

Key Key::symmetric(std::string key_id, std::string material) {
  if (material.size() < kMinSymmetricKeyBytes) {
    fail(ErrorCode::kInvalidKey, "symmetric key shorter than 16 bytes");
  }
  return Key{KeyKind::kSymmetric, std::move(key_id), std::move(material)};
}

Key Key::private_key(std::string key_id, std::string material) {
  if (material.empty()) fail(ErrorCode::kInvalidKey, "empty private key");
  return Key{KeyKind::kAsymmetricPrivate, std::move(key_id), std::move(material)};
}

Key Key::public_record() const {
  if (kind == KeyKind::kSymmetric) fail(ErrorCode::kInvalidKey, "symmetric key has no public record");
  return Key{KeyKind::kAsymmetricPublic, key_id, material};
}

std::string jws_sign(const JoseHeader& header, const Json& claims, const Key& key) {
  if (header.alg == kAlgHS256) {
    if (key.kind != KeyKind::kSymmetric) fail(ErrorCode::kInvalidKey, "HS256 needs a symmetric key");
    if (key.material.size() < kMinSymmetricKeyBytes) fail(ErrorCode::kInvalidKey, "key too short");
  } else if (header.alg == kAlgPrivateKeySim) {
    if (key.kind != KeyKind::kAsymmetricPrivate) {
      fail(ErrorCode::kInvalidKey, "PK-SHA256 needs a private key");
    }
  } else {
    fail(ErrorCode::kUnsupportedAlgorithm, header.alg);
  }

  Json protected_header;
  protected_header["alg"] = header.alg;
  const std::string& kid = header.kid.empty() ? key.key_id : header.kid;
  if (!kid.empty()) protected_header["kid"] = kid;

  std::string input = base64url_encode(protected_header.dump());
  input.push_back('.');
  input += base64url_encode(claims.dump());
  std::string signature = compute_signature(header.alg, key, input);
  input.push_back('.');
  input += base64url_encode(signature);
  return input;
}

Json jws_verify(std::string_view compact, const Key& key) {
  Segments seg = split(compact);
  Json header = decode_json_segment(seg.header, "header");
  if (!header.is_object() || !header.contains("alg") || !header["alg"].is_string()) {
    fail(ErrorCode::kMalformedToken, "header without alg");
  }
  const std::string alg = header["alg"];
  if (alg != kAlgHS256 && alg != kAlgPrivateKeySim) fail(ErrorCode::kUnsupportedAlgorithm, alg);
  bool key_fits = alg == kAlgHS256 ? key.kind == KeyKind::kSymmetric
                                   : key.kind != KeyKind::kSymmetric;
  if (!key_fits) fail(ErrorCode::kBadSignature, "key cannot verify " + alg);

  auto signature = base64url_decode(seg.signature);
  if (!signature) fail(ErrorCode::kMalformedToken, "bad base64url in signature");
  std::string_view input = compact.substr(0, seg.header.size() + 1 + seg.payload.size());
  if (!constant_time_equal(compute_signature(alg, key, input), *signature)) {
    fail(ErrorCode::kBadSignature);
  }
  return decode_json_segment(seg.payload, "payload");
}

Json peek_header(std::string_view compact) {
  return decode_json_segment(split(compact).header, "header");
}

Json peek_claims(std::string_view compact) {
  return decode_json_segment(split(compact).payload, "payload");
}

ClientAssertion build_client_assertion(std::string_view client_id, const Url& token_endpoint,
                                       const Key& key, EpochSeconds now) {
  ClientAssertion out;
  out.issuer_client_id = std::string(client_id);
  out.audience = token_endpoint;
  out.issued_at = now;
  out.expiry = now + kAssertionLifetime;
  Json claims{
      {"iss", out.issuer_client_id},
      {"sub", out.issuer_client_id},
      {"aud", token_endpoint.render()},
      {"iat", out.issued_at},
      {"exp", out.expiry},
  };
  JoseHeader header;
  header.alg = key.kind == KeyKind::kSymmetric ? kAlgHS256 : kAlgPrivateKeySim;
  out.jwt = jws_sign(header, claims, key);
  return out;
}

}  // namespace oidclab::jose
