// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/identity.hpp"
#include "core/url.hpp"

namespace oidclab {

// Insertion-ordered so every serialized document is byte-stable.
using Json = nlohmann::ordered_json;

using EpochSeconds = std::int64_t;

inline constexpr const char* kIssuerRel = "http://openid.net/specs/connect/1.0/issuer";

struct WebFingerLink {
  std::string rel;
  Url href;
};

struct WebFingerResponse {
  std::string subject;
  std::vector<WebFingerLink> links;

  // The href of the single issuer-relation link. Throws kMalformedMetadata if
  // there is not exactly one.
  const Url& issuer_href() const;

  Json to_json() const;
  static WebFingerResponse from_json(const Json& j);
};

// The discovery document. Nothing ties the endpoints to each other or to the
// issuer; only the client's hardening policy may add such constraints.
struct ProviderMetadata {
  Url issuer;
  Url registration_endpoint;
  Url authorization_endpoint;
  Url token_endpoint;
  Url userinfo_endpoint;
  Url jwks_uri;

  Json to_json() const;
  // Throws kMalformedMetadata on missing members or unparsable Urls.
  static ProviderMetadata from_json(const Json& j);

  friend bool operator==(const ProviderMetadata&, const ProviderMetadata&) = default;
};

struct ClientCredentials {
  std::string client_id;
  std::string client_secret;

  friend bool operator==(const ClientCredentials&, const ClientCredentials&) = default;
};

// Shared shape of authorization codes and access tokens.
struct IssuedToken {
  std::string value;
  std::string issued_to;
  Identity subject;
  EpochSeconds issued_at = 0;
};

using AuthorizationCode = IssuedToken;
using AccessToken = IssuedToken;

}  // namespace oidclab
