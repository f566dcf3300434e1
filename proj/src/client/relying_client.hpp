// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "client/policy.hpp"
#include "core/id_token.hpp"
#include "core/identity.hpp"
#include "core/model.hpp"
#include "core/token_source.hpp"
#include "jose/jwks.hpp"
#include "simnet/network.hpp"

namespace oidclab::client {

enum class Flow { kCode, kImplicit };

std::string_view flow_name(Flow flow);
// Throws kInvalidArgument.
Flow flow_from_name(std::string_view name);

struct ClientConfig {
  Url base = Url::parse("http://client.com/");
  Flow flow = Flow::kCode;
  HardeningPolicy policy;
};

struct RegistrationEntry {
  ProviderMetadata metadata;
  ClientCredentials credentials;
};

struct StoredProfile {
  std::string issuer;
  std::string subject;
  std::string name;
  std::string preferred_username;
  std::string email;
};

// One login attempt, from initiation to its end. `step` names the protocol
// step at which an abort happened:
//   1.0 initiation   1.1.1 webfinger   1.1.2 whitelist   1.1.3 metadata
//   1.1.4 endpoint restriction   1.2 registration   1.3 jwks
//   2.1 authorization request   2.3 authorization response
//   3.1 token request   3.2 id_token validation   3.3 userinfo   3.4 profile
struct LoginRecord {
  enum class Status { kPending, kLoggedIn, kAborted };

  Status status = Status::kPending;
  std::string identity;
  std::optional<ErrorCode> error;
  std::string step;
  std::string detail;
  std::string issuer;
  std::string subject;
  std::string id_token;
  std::string access_token;
};

struct Session {
  std::string state;
  std::string nonce;
  Url pending_issuer;
  ProviderMetadata metadata;
  ClientCredentials credentials;
  jose::KeySet keys;
  std::size_t record = 0;
  bool finished = false;
};

// The Relying Party on client.com. Its web endpoints:
//   GET  /                  session cookie and CSRF token
//   GET  /login?identity=&csrf=   start a login
//   GET  /callback          code flow response, or a relay page (implicit)
//   POST /callback/implicit fragment parameters relayed by the browser
class RelyingClient {
 public:
  RelyingClient(ClientConfig config, std::uint64_t seed);

  void attach(simnet::Network& net);
  simnet::HttpResponse handle(const simnet::HttpRequest& request);

  // Discovery. Throws kWhitelistRejected, kEndpointRestrictionViolated,
  // kPayloadTooLarge, kMalformedMetadata or kHostUnreachable.
  ProviderMetadata discover(const Identity& identity);
  // Cache lookup by issuer, registering at metadata.registration_endpoint on
  // a miss. Throws kRegistrationFailed.
  ClientCredentials ensure_registration(const ProviderMetadata& metadata);
  // Runs discovery and registration and returns the 302 to the
  // authorization endpoint.
  simnet::HttpResponse begin_login(const std::string& raw_identity);
  simnet::HttpResponse complete_login_code(const Params& callback);
  simnet::HttpResponse complete_login_implicit(const Params& fragment);
  // Stores name, preferred_username and email, escaped when the policy asks.
  const StoredProfile& consume_userinfo(const Json& claims, const std::string& issuer);

  const ClientConfig& config() const { return config_; }
  HardeningPolicy& policy() { return config_.policy; }
  Url redirect_uri() const { return config_.base.with_path("/callback"); }
  const std::vector<LoginRecord>& logins() const { return logins_; }
  const std::vector<StoredProfile>& profiles() const { return profiles_; }
  const std::map<std::string, RegistrationEntry>& registrations() const { return cache_; }
  std::size_t registration_requests() const { return registration_requests_; }
  // Public record of the private_key_jwt key.
  jose::Key assertion_public_key() const { return assertion_key_.public_record(); }

 private:
  simnet::HttpResponse home(const simnet::HttpRequest& request);
  simnet::HttpResponse login_start(const simnet::HttpRequest& request);
  // Runs `body`, turning a thrown Error into an aborted record.
  template <typename F>
  simnet::HttpResponse guarded(std::size_t record, F&& body);
  Session& session_for(const Params& params);
  simnet::HttpResponse fetch(const Url& url, const simnet::Headers& headers = {});
  simnet::HttpResponse post(const simnet::HttpRequest& request);
  Params client_auth(const Session& session);
  Json fetch_userinfo(const Session& session, const std::string& access_token);
  IdTokenClaims validate(const Session& session, const std::string& id_token);
  void finish(Session& session, const IdTokenClaims& claims, const Json& userinfo,
              const std::string& id_token, const std::string& access_token);

  ClientConfig config_;
  TokenSource tokens_;
  jose::Key assertion_key_;
  simnet::Network* net_ = nullptr;
  std::string step_;
  std::map<std::string, RegistrationEntry> cache_;
  std::size_t registration_requests_ = 0;
  std::map<std::string, Session> sessions_;
  // CSRF token per browser session cookie.
  std::map<std::string, std::string> csrf_;
  std::vector<LoginRecord> logins_;
  std::vector<StoredProfile> profiles_;
};

}  // namespace oidclab::client
