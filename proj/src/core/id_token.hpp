// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "core/url.hpp"
#include "jose/jws.hpp"

namespace oidclab {

inline constexpr EpochSeconds kDefaultClockSkew = 60;

struct IdTokenClaims {
  Url iss;
  std::string sub;
  EpochSeconds exp = 0;
  EpochSeconds iat = 0;
  std::string nonce;
  std::vector<std::string> aud;

  // Members in the order iss, sub, exp, iat, nonce, aud; aud always a list.
  Json to_json() const;
  // Accepts aud as a single string or a list. Unknown members are ignored.
  // Throws kMalformedToken.
  static IdTokenClaims from_json(const Json& j);

  friend bool operator==(const IdTokenClaims&, const IdTokenClaims&) = default;
};

struct ValidationExpectations {
  Url expected_issuer;
  std::string expected_client_id;
  std::string expected_nonce;
  EpochSeconds now = 0;
  EpochSeconds clock_skew = kDefaultClockSkew;
  jose::Key verification_key;
};

// Checks, in this order, stopping at the first failure:
//   signature  -> kBadSignature (kMalformedToken / kUnsupportedAlgorithm)
//   iss        -> kIssuerMismatch   (normalized Url equality)
//   aud        -> kAudienceMismatch (exact string membership)
//   time       -> kExpired / kNotYetValid, with clock_skew on both ends
//   nonce      -> kNonceMismatch
IdTokenClaims validate_id_token(std::string_view compact, const ValidationExpectations& expect);

}  // namespace oidclab
