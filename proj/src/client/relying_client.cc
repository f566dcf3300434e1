// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "client/relying_client.hpp"

#include "jose/crypto.hpp"
#include "simnet/user_agent.hpp"

namespace oidclab::client {

using simnet::HttpRequest;
using simnet::HttpResponse;
using simnet::Method;
using simnet::Principal;

namespace {

constexpr const char* kAssertionType = "urn:ietf:params:oauth:client-assertion-type:jwt-bearer";
constexpr const char* kImplicitRelayPath = "/callback/implicit";

Json parse_or(ErrorCode code, const HttpResponse& response, const std::string& what) {
  if (response.status != 200) {
    std::string detail = what + " returned " + std::to_string(response.status);
    if (auto remote = simnet::error_code_of(response)) detail += " " + std::string(error_name(*remote));
    fail(code, detail);
  }
  auto doc = simnet::parse_json_body(response.body);
  if (!doc || !doc->is_object()) fail(code, what + " is not a JSON object");
  return *doc;
}

std::string string_member(const Json& doc, const char* key, ErrorCode code) {
  if (!doc.contains(key) || !doc[key].is_string() || doc[key].get<std::string>().empty()) {
    fail(code, std::string("missing ") + key);
  }
  return doc[key].get<std::string>();
}

std::string string_or_empty(const Json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  return doc[key].is_string() ? doc[key].get<std::string>() : doc[key].dump();
}

Url metadata_location(const Url& issuer) {
  Url out = issuer.without_query();
  if (out.path.empty() || out.path.back() != '/') out.path += '/';
  out.path += ".well-known/openid-configuration";
  return out;
}

}  // namespace

std::string_view flow_name(Flow flow) { return flow == Flow::kCode ? "code" : "implicit"; }

Flow flow_from_name(std::string_view name) {
  if (name == "code") return Flow::kCode;
  if (name == "implicit") return Flow::kImplicit;
  fail(ErrorCode::kInvalidArgument, "unknown flow " + std::string(name));
}

RelyingClient::RelyingClient(ClientConfig config, std::uint64_t seed)
    : config_(std::move(config)), tokens_(seed, "client") {
  config_.policy.fetch_policy.validate();
  TokenSource keys(seed, "client-assertion-key");
  assertion_key_ = jose::Key::private_key("client-1", keys.next_hex32());
}

void RelyingClient::attach(simnet::Network& net) {
  net_ = &net;
  net.register_host(config_.base.host, simnet::HostOwner::kHonest,
                    [this](const HttpRequest& r) { return handle(r); });
}

HttpResponse RelyingClient::handle(const HttpRequest& request) {
  const std::string& path = request.url.path;
  if (path == "/" && request.method != Method::kPost) return home(request);
  if (path == "/login" && request.method == Method::kGet) return login_start(request);
  if (path == "/callback" && request.method == Method::kGet) {
    const Params& q = request.url.query;
    if (!param(q, "code") && !param(q, "state")) {
      HttpResponse relay = HttpResponse::text("relaying authorization response");
      relay.headers.emplace_back(simnet::kFragmentRelayHeader, kImplicitRelayPath);
      return relay;
    }
    return complete_login_code(q);
  }
  if (path == kImplicitRelayPath && request.method == Method::kPost) {
    return complete_login_implicit(request.form());
  }
  return HttpResponse::text("not found", 404);
}

HttpResponse RelyingClient::home(const HttpRequest& request) {
  HttpResponse out = HttpResponse::text("client home");
  auto sid = simnet::request_cookie(request.headers, "sid");
  if (!sid || !csrf_.count(*sid)) {
    sid = tokens_.next_hex32();
    csrf_[*sid] = tokens_.next_hex32();
    out.headers.emplace_back("Set-Cookie", "sid=" + *sid + "; HttpOnly");
  }
  out.headers.emplace_back(simnet::kCsrfTokenHeader, csrf_[*sid]);
  return out;
}

HttpResponse RelyingClient::login_start(const HttpRequest& request) {
  const std::string identity = param(request.url.query, "identity").value_or("");
  if (config_.policy.csrf_protection) {
    auto sid = simnet::request_cookie(request.headers, "sid");
    auto presented = param(request.url.query, "csrf");
    auto expected = sid ? csrf_.find(*sid) : csrf_.end();
    if (expected == csrf_.end() || !presented || !jose::constant_time_equal(*presented, expected->second)) {
      LoginRecord r;
      r.identity = identity;
      r.status = LoginRecord::Status::kAborted;
      r.error = ErrorCode::kCsrfRejected;
      r.step = "1.0";
      r.detail = "login initiation without a valid csrf token";
      logins_.push_back(std::move(r));
      return HttpResponse::error(403, ErrorCode::kCsrfRejected, logins_.back().detail);
    }
  }
  return begin_login(identity);
}

template <typename F>
HttpResponse RelyingClient::guarded(std::size_t record, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    LoginRecord& r = logins_[record];
    r.status = LoginRecord::Status::kAborted;
    r.error = e.code();
    r.step = step_;
    r.detail = e.detail();
    return HttpResponse::error(e.code() == ErrorCode::kCsrfRejected ? 403 : 400, e.code(), e.detail());
  }
}

HttpResponse RelyingClient::fetch(const Url& url, const simnet::Headers& headers) {
  return simnet::guarded_fetch(*net_, url, config_.policy.fetch_policy, Principal::kClient, headers);
}

HttpResponse RelyingClient::post(const HttpRequest& request) {
  const auto cap = config_.policy.fetch_policy.byte_cap;
  simnet::PullPolicy pull;
  pull.chunk = config_.policy.fetch_policy.chunk;
  pull.max_bytes = cap == 0 ? 0 : cap + 1;
  HttpResponse response = net_->dispatch(request, pull);
  if (cap > 0 && response.body.size() > cap) {
    fail(ErrorCode::kPayloadTooLarge, "more than " + std::to_string(cap) + " bytes");
  }
  return response;
}

ProviderMetadata RelyingClient::discover(const Identity& identity) {
  step_ = "1.1.1";
  Url wf = webfinger_url(identity.domain).with_query({{"resource", "acct:" + identity.render()},
                                                      {"rel", kIssuerRel}});
  HttpResponse response = fetch(wf);
  const Url href = WebFingerResponse::from_json(parse_or(ErrorCode::kMalformedMetadata, response, "webfinger"))
                       .issuer_href();

  step_ = "1.1.2";
  if (!config_.policy.whitelisted(href)) fail(ErrorCode::kWhitelistRejected, href.origin());

  step_ = "1.1.3";
  response = fetch(metadata_location(href));
  ProviderMetadata metadata =
      ProviderMetadata::from_json(parse_or(ErrorCode::kMalformedMetadata, response, "metadata"));

  step_ = "1.1.4";
  if (config_.policy.endpoint_restriction &&
      !same_site(metadata.token_endpoint, metadata.authorization_endpoint)) {
    fail(ErrorCode::kEndpointRestrictionViolated,
         metadata.token_endpoint.host + " vs " + metadata.authorization_endpoint.host);
  }
  return metadata;
}

ClientCredentials RelyingClient::ensure_registration(const ProviderMetadata& metadata) {
  step_ = "1.2";
  const std::string key = metadata.issuer.render();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second.credentials;

  Json body{{"client_uri", config_.base.render()},
            {"redirect_uris", Json::array({redirect_uri().render()})},
            {"token_endpoint_auth_method",
             std::string(registration_auth_method(config_.policy.client_auth_mode))}};
  if (config_.policy.client_auth_mode == ClientAuthMode::kPrivateKeyJwt) {
    body["jwks"] = jose::jwks_to_json({assertion_key_.public_record()});
  }
  ++registration_requests_;
  HttpResponse response = post(HttpRequest::post_json(metadata.registration_endpoint, Principal::kClient, body));
  Json doc = parse_or(ErrorCode::kRegistrationFailed, response, "registration");
  ClientCredentials creds{string_member(doc, "client_id", ErrorCode::kRegistrationFailed),
                          string_member(doc, "client_secret", ErrorCode::kRegistrationFailed)};
  cache_.emplace(key, RegistrationEntry{metadata, creds});
  return creds;
}

HttpResponse RelyingClient::begin_login(const std::string& raw_identity) {
  LoginRecord fresh;
  fresh.identity = raw_identity;
  logins_.push_back(std::move(fresh));
  const std::size_t record = logins_.size() - 1;
  return guarded(record, [&] {
    step_ = "1.0";
    Identity identity = parse_identity(raw_identity);
    ProviderMetadata metadata = discover(identity);
    ClientCredentials creds = ensure_registration(metadata);

    step_ = "1.3";
    Json jwks = parse_or(ErrorCode::kMalformedMetadata, fetch(metadata.jwks_uri), "jwks");
    jose::KeySet keys = jose::parse_jwks(jwks);

    step_ = "2.1";
    Session session;
    session.state = tokens_.next_hex32();
    session.nonce = tokens_.next_hex32();
    session.pending_issuer = metadata.issuer;
    session.metadata = metadata;
    session.credentials = creds;
    session.keys = std::move(keys);
    session.record = record;
    logins_[record].issuer = metadata.issuer.render();

    Params query = metadata.authorization_endpoint.query;
    query.emplace_back("response_type", config_.flow == Flow::kCode ? "code" : "id_token token");
    query.emplace_back("scope", "openid");
    query.emplace_back("client_id", creds.client_id);
    query.emplace_back("redirect_uri", redirect_uri().render());
    query.emplace_back("state", session.state);
    query.emplace_back("nonce", session.nonce);
    Url target = metadata.authorization_endpoint.with_query(std::move(query));
    sessions_.emplace(session.state, std::move(session));
    return HttpResponse::redirect(target);
  });
}

Session& RelyingClient::session_for(const Params& params) {
  auto it = sessions_.find(param(params, "state").value_or(""));
  if (it == sessions_.end() || it->second.finished) {
    LoginRecord r;
    r.status = LoginRecord::Status::kAborted;
    r.error = ErrorCode::kStateMismatch;
    r.step = "2.3";
    r.detail = "no pending login for this state";
    logins_.push_back(std::move(r));
    fail(ErrorCode::kStateMismatch, logins_.back().detail);
  }
  it->second.finished = true;
  return it->second;
}

Params RelyingClient::client_auth(const Session& session) {
  const auto& creds = session.credentials;
  switch (config_.policy.client_auth_mode) {
    case ClientAuthMode::kSecretPost:
      return {{"client_id", creds.client_id}, {"client_secret", creds.client_secret}};
    case ClientAuthMode::kClientSecretJwt:
    case ClientAuthMode::kPrivateKeyJwt: {
      const jose::Key key = config_.policy.client_auth_mode == ClientAuthMode::kClientSecretJwt
                                ? jose::Key::symmetric("", creds.client_secret)
                                : assertion_key_;
      auto assertion = jose::build_client_assertion(creds.client_id, session.metadata.token_endpoint, key,
                                                    net_->now());
      return {{"client_id", creds.client_id},
              {"client_assertion_type", kAssertionType},
              {"client_assertion", assertion.jwt}};
    }
  }
  return {};
}

IdTokenClaims RelyingClient::validate(const Session& session, const std::string& id_token) {
  auto key = jose::select_key(session.keys, id_token);
  if (!key) fail(ErrorCode::kBadSignature, "no published key matches the id_token");
  ValidationExpectations expect;
  expect.expected_issuer = session.pending_issuer;
  expect.expected_client_id = session.credentials.client_id;
  expect.expected_nonce = session.nonce;
  expect.now = net_->now();
  expect.verification_key = *key;
  return validate_id_token(id_token, expect);
}

Json RelyingClient::fetch_userinfo(const Session& session, const std::string& access_token) {
  HttpResponse response =
      fetch(session.metadata.userinfo_endpoint, {{"Authorization", "Bearer " + access_token}});
  return parse_or(ErrorCode::kUserinfoFailed, response, "userinfo");
}

void RelyingClient::finish(Session& session, const IdTokenClaims& claims, const Json& userinfo,
                           const std::string& id_token, const std::string& access_token) {
  step_ = "3.3";
  if (string_or_empty(userinfo, "sub") != claims.sub) {
    fail(ErrorCode::kUserinfoFailed, "userinfo sub differs from id_token sub");
  }
  step_ = "3.4";
  consume_userinfo(userinfo, claims.iss.render());
  LoginRecord& r = logins_[session.record];
  r.status = LoginRecord::Status::kLoggedIn;
  r.issuer = claims.iss.render();
  r.subject = claims.sub;
  r.id_token = id_token;
  r.access_token = access_token;
}

HttpResponse RelyingClient::complete_login_code(const Params& callback) {
  step_ = "2.3";
  Session* found = nullptr;
  try {
    found = &session_for(callback);
  } catch (const Error& e) {
    return HttpResponse::error(400, e.code(), e.detail());
  }
  Session& session = *found;
  return guarded(session.record, [&] {
    step_ = "2.3";
    if (config_.policy.require_issuer_binding) {
      auto iss = param(callback, "iss");
      auto url = iss ? Url::try_parse(*iss) : std::nullopt;
      if (!url || !(*url == session.pending_issuer)) {
        fail(ErrorCode::kIssuerBindingMismatch,
             session.pending_issuer.render() + " vs " + iss.value_or("(absent)"));
      }
    }
    auto code = param(callback, "code");
    if (!code || code->empty()) fail(ErrorCode::kInvalidArgument, "callback without code");

    step_ = "3.1";
    Params form{{"grant_type", "authorization_code"}, {"code", *code}, {"redirect_uri", redirect_uri().render()}};
    for (auto& p : client_auth(session)) form.push_back(std::move(p));
    HttpResponse response =
        post(HttpRequest::post_form(session.metadata.token_endpoint, Principal::kClient, form));
    Json doc = parse_or(ErrorCode::kTokenRequestFailed, response, "token endpoint");
    const std::string id_token = string_member(doc, "id_token", ErrorCode::kTokenRequestFailed);
    const std::string access_token = string_member(doc, "access_token", ErrorCode::kTokenRequestFailed);

    step_ = "3.2";
    IdTokenClaims claims = validate(session, id_token);

    step_ = "3.3";
    Json userinfo = fetch_userinfo(session, access_token);
    finish(session, claims, userinfo, id_token, access_token);
    return HttpResponse::text("signed in as " + claims.sub);
  });
}

HttpResponse RelyingClient::complete_login_implicit(const Params& fragment) {
  step_ = "2.3";
  Session* found = nullptr;
  try {
    found = &session_for(fragment);
  } catch (const Error& e) {
    return HttpResponse::error(400, e.code(), e.detail());
  }
  Session& session = *found;
  return guarded(session.record, [&] {
    step_ = "2.3";
    if (config_.policy.require_issuer_binding) {
      auto iss = param(fragment, "iss");
      auto url = iss ? Url::try_parse(*iss) : std::nullopt;
      if (!url || !(*url == session.pending_issuer)) {
        fail(ErrorCode::kIssuerBindingMismatch,
             session.pending_issuer.render() + " vs " + iss.value_or("(absent)"));
      }
    }
    auto access_token = param(fragment, "access_token");
    auto id_token = param(fragment, "id_token");
    if (!access_token || !id_token) fail(ErrorCode::kInvalidArgument, "fragment without tokens");

    // userinfo is fetched before the id_token is checked, so the access token
    // reaches userinfo_endpoint even when validation later fails.
    step_ = "3.3";
    Json userinfo = fetch_userinfo(session, *access_token);

    step_ = "3.2";
    IdTokenClaims claims = validate(session, *id_token);
    finish(session, claims, userinfo, *id_token, *access_token);
    return HttpResponse::text("signed in as " + claims.sub);
  });
}

const StoredProfile& RelyingClient::consume_userinfo(const Json& claims, const std::string& issuer) {
  auto field = [&](const char* key) {
    std::string v = string_or_empty(claims, key);
    return config_.policy.sanitize_userinfo ? html_escape(v) : v;
  };
  StoredProfile p;
  p.issuer = issuer;
  p.subject = string_or_empty(claims, "sub");
  p.name = field("name");
  p.preferred_username = field("preferred_username");
  p.email = field("email");
  profiles_.push_back(std::move(p));
  return profiles_.back();
}

}  // namespace oidclab::client
