// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "simnet/network.hpp"

namespace oidclab::client {

enum class ClientAuthMode { kSecretPost, kClientSecretJwt, kPrivateKeyJwt };

std::string_view auth_mode_name(ClientAuthMode mode);
// Accepts "secret_post", "client_secret_jwt", "private_key_jwt". Throws
// kInvalidArgument.
ClientAuthMode auth_mode_from_name(std::string_view name);
// Value of token_endpoint_auth_method in the registration request.
std::string_view registration_auth_method(ClientAuthMode mode);

// The client's countermeasures, one field each. Default-constructed is the
// vulnerable baseline with every defense off.
struct HardeningPolicy {
  // Allowed issuer origins. Unset means any OP is accepted.
  std::optional<std::vector<Url>> whitelist;
  bool endpoint_restriction = false;
  simnet::FetchPolicy fetch_policy;
  bool csrf_protection = false;
  ClientAuthMode client_auth_mode = ClientAuthMode::kSecretPost;
  bool require_issuer_binding = false;
  bool sanitize_userinfo = false;

  // True when `url`'s origin equals the origin of some whitelist entry.
  bool whitelisted(const Url& url) const;

  Json to_json() const;
  // Unknown members are rejected. Throws kInvalidArgument.
  static HardeningPolicy from_json(const Json& j);

  friend bool operator==(const HardeningPolicy& a, const HardeningPolicy& b) {
    return a.to_json() == b.to_json();
  }
};

// Equal registrable domains (last two labels). Subdomains and paths may
// differ, which is also why an attacker on a sibling subdomain passes.
bool same_site(const Url& a, const Url& b);

// Escapes < > & " as HTML entities.
std::string html_escape(std::string_view raw);

}  // namespace oidclab::client
