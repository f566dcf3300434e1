// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "core/model.hpp"
#include "core/url.hpp"

namespace oidclab::jose {

enum class KeyKind { kSymmetric, kAsymmetricPrivate, kAsymmetricPublic };

inline constexpr std::size_t kMinSymmetricKeyBytes = 16;

// HS256 is the real thing. "PK-SHA256" stands in for private_key_jwt: the
// signature is SHA-256(private material || signing input) and the public
// record carries what the verifier needs. It is not a public-key scheme;
// only the audience check of the client assertion is under test.
inline constexpr std::string_view kAlgHS256 = "HS256";
inline constexpr std::string_view kAlgPrivateKeySim = "PK-SHA256";

struct Key {
  KeyKind kind = KeyKind::kSymmetric;
  std::string key_id;
  std::string material;

  // Throws kInvalidKey when material is shorter than 16 bytes.
  static Key symmetric(std::string key_id, std::string material);
  static Key private_key(std::string key_id, std::string material);

  // Verification record for a private key.
  Key public_record() const;

  friend bool operator==(const Key&, const Key&) = default;
};

struct JoseHeader {
  std::string alg{kAlgHS256};
  // Defaults to the signing key's id when empty.
  std::string kid;
};

// header.payload.signature in compact form; deterministic for equal inputs.
// Throws kUnsupportedAlgorithm for an alg other than HS256/PK-SHA256 and
// kInvalidKey when the key kind cannot sign with the requested alg.
std::string jws_sign(const JoseHeader& header, const Json& claims, const Key& key);

// Returns the decoded claims iff the recomputed signature matches.
// Throws kMalformedToken | kBadSignature | kUnsupportedAlgorithm.
Json jws_verify(std::string_view compact, const Key& key);

// Decodes the protected header without verifying anything.
Json peek_header(std::string_view compact);
// Decodes the payload without verifying anything.
Json peek_claims(std::string_view compact);

inline constexpr EpochSeconds kAssertionLifetime = 300;

struct ClientAssertion {
  std::string issuer_client_id;
  Url audience;
  EpochSeconds issued_at = 0;
  EpochSeconds expiry = 0;
  std::string jwt;
};

// Claims {iss, sub, aud, iat, exp} with iss = sub = client_id and aud the
// rendered token endpoint; lifetime kAssertionLifetime.
ClientAssertion build_client_assertion(std::string_view client_id, const Url& token_endpoint,
                                       const Key& key, EpochSeconds now);

}  // namespace oidclab::jose
