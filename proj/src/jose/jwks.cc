// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "jose/jwks.hpp"

#include "core/error.hpp"
#include "jose/base64url.hpp"

namespace oidclab::jose {

Json jwks_to_json(const std::vector<Key>& keys) {
  Json out{{"keys", Json::array()}};
  for (const auto& key : keys) {
    if (key.kind == KeyKind::kAsymmetricPrivate) {
      fail(ErrorCode::kInvalidKey, "refusing to publish a private key");
    }
    bool sym = key.kind == KeyKind::kSymmetric;
    out["keys"].push_back(Json{
        {"kty", sym ? "oct" : "x-sim"},
        {"kid", key.key_id},
        {"alg", sym ? kAlgHS256 : kAlgPrivateKeySim},
        {"k", base64url_encode(key.material)},
    });
  }
  return out;
}

KeySet parse_jwks(const Json& doc) {
  if (!doc.is_object() || !doc.contains("keys") || !doc["keys"].is_array()) {
    fail(ErrorCode::kMalformedMetadata, "jwks without keys array");
  }
  KeySet out;
  for (const auto& jwk : doc["keys"]) {
    if (!jwk.is_object()) fail(ErrorCode::kMalformedMetadata, "jwk is not an object");
    for (const char* member : {"kty", "kid", "k"}) {
      if (!jwk.contains(member) || !jwk[member].is_string()) {
        fail(ErrorCode::kMalformedMetadata, std::string("jwk missing ") + member);
      }
    }
    auto material = base64url_decode(jwk["k"].get<std::string>());
    if (!material) fail(ErrorCode::kMalformedMetadata, "jwk k is not base64url");
    const std::string kty = jwk["kty"];
    Key key;
    if (kty == "oct") {
      if (material->size() < kMinSymmetricKeyBytes) fail(ErrorCode::kMalformedMetadata, "short key");
      key.kind = KeyKind::kSymmetric;
    } else if (kty == "x-sim") {
      key.kind = KeyKind::kAsymmetricPublic;
    } else {
      fail(ErrorCode::kMalformedMetadata, "unsupported kty " + kty);
    }
    key.key_id = jwk["kid"];
    key.material = *std::move(material);
    out.emplace(key.key_id, std::move(key));
  }
  return out;
}

std::optional<Key> select_key(const KeySet& keys, std::string_view compact) {
  Json header;
  try {
    header = peek_header(compact);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (header.is_object() && header.contains("kid") && header["kid"].is_string()) {
    auto it = keys.find(header["kid"].get<std::string>());
    if (it == keys.end()) return std::nullopt;
    return it->second;
  }
  if (keys.size() == 1) return keys.begin()->second;
  return std::nullopt;
}

}  // namespace oidclab::jose
