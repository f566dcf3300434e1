// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/id_token.hpp"
#include "core/model.hpp"
#include "core/token_source.hpp"
#include "jose/jws.hpp"
#include "simnet/network.hpp"

namespace oidclab::op {

inline constexpr EpochSeconds kDefaultIdTokenLifetime = 3600;

struct UserRecord {
  std::string username;
  std::string password;
  std::string name;
  std::string email;
};

struct OpConfig {
  Url issuer;
  Url registration_endpoint;
  Url authorization_endpoint;
  Url token_endpoint;
  Url userinfo_endpoint;
  Url jwks_uri;
  // Login form target, on the authorization endpoint's host.
  std::string login_path = "/login";
  std::vector<UserRecord> users;
  jose::Key signing_key;
  // Issuer-binding countermeasure: add iss to every authorization response.
  bool issue_issuer_in_auth_response = false;
  EpochSeconds id_token_lifetime = kDefaultIdTokenLifetime;

  ProviderMetadata metadata() const;
  // Every endpoint must share the issuer's registrable domain (the login
  // endpoint lives on a subdomain). Throws kInvalidArgument.
  void validate() const;
};

// honestop.com with login.honestop.com as the authorization host, one user
// (alice), and a signing key drawn from `seed`.
OpConfig default_op_config(std::uint64_t seed);

struct RegisteredClient {
  ClientCredentials credentials;
  // Prefix every redirect_uri must start with.
  Url redirect_domain;
  std::string auth_method = "client_secret_post";
  // Verification record for private_key_jwt clients.
  std::optional<jose::Key> assertion_key;
};

struct AuthorizationGrant {
  AuthorizationCode code;
  std::string nonce;
  Url redirect_uri;
  bool redeemed = false;
  // Failed replays are counted; a grant is still redeemed at most once.
  int replay_attempts = 0;
};

struct TokenResponse {
  std::string access_token;
  std::string id_token;
};

// The honest OpenID Provider. All methods throw Error on protocol failures;
// handle() converts those into JSON error responses.
class OpenIdProvider {
 public:
  OpenIdProvider(OpConfig config, std::uint64_t seed);

  // Registers the issuer host and the authorization host (if different).
  void attach(simnet::Network& net);
  simnet::HttpResponse handle(const simnet::HttpRequest& request);

  // Body: {"client_uri": "...", "token_endpoint_auth_method"?: "...",
  // "jwks"?: {...}}. Throws kMalformedRegistration.
  ClientCredentials handle_registration(const Json& body);

  // Checks client_id and redirect_uri. Throws kUnknownClient or
  // kInvalidRedirectUri.
  const RegisteredClient& check_authorization_request(const Params& query) const;
  // Issues the authorization response for an authenticated End-User: a 302
  // to redirect_uri with code (query) or tokens (fragment).
  simnet::HttpResponse issue_authorization_response(const Params& query, const Identity& user);
  // Throws kAuthenticationFailed.
  Identity authenticate(const std::string& username, const std::string& password) const;

  // Form body of a token request. Throws kClientAuthFailed,
  // kAudienceMismatch, kUnknownCode or kCodeReplayed.
  TokenResponse handle_token(const Params& form);

  // Throws kInvalidToken.
  Json handle_userinfo(const std::string& access_token) const;

  const OpConfig& config() const { return config_; }
  ProviderMetadata metadata() const { return config_.metadata(); }
  const std::map<std::string, AuthorizationGrant>& grants() const { return grants_; }
  const std::map<std::string, RegisteredClient>& clients() const { return clients_; }
  EpochSeconds now() const;

 private:
  simnet::HttpResponse route(const simnet::HttpRequest& request);
  simnet::HttpResponse authorize_endpoint(const simnet::HttpRequest& request);
  simnet::HttpResponse login_endpoint(const simnet::HttpRequest& request);
  const RegisteredClient& authenticate_client(const Params& form) const;
  std::string mint_id_token(const std::string& client_id, const Identity& subject,
                            const std::string& nonce);
  AccessToken mint_access_token(const std::string& client_id, const Identity& subject);

  OpConfig config_;
  TokenSource tokens_;
  const simnet::Network* net_ = nullptr;
  std::map<std::string, RegisteredClient> clients_;
  std::map<std::string, AuthorizationGrant> grants_;
  std::map<std::string, AccessToken> access_tokens_;
  // Login requests waiting for the form submission, by request id.
  std::map<std::string, Params> pending_;
  // Browser sessions, by cookie value.
  std::map<std::string, Identity> sessions_;
};

}  // namespace oidclab::op
