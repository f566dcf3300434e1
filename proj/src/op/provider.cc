// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "op/provider.hpp"

#include "jose/crypto.hpp"
#include "jose/jwks.hpp"
#include "simnet/user_agent.hpp"

namespace oidclab::op {

using simnet::HttpRequest;
using simnet::HttpResponse;
using simnet::Method;

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAuthenticationFailed:
    case ErrorCode::kClientAuthFailed:
    case ErrorCode::kAudienceMismatch:
    case ErrorCode::kInvalidToken:
      return 401;
    default:
      return 400;
  }
}

bool same_endpoint(const Url& a, const Url& b) {
  return a.host == b.host && a.port == b.port && a.path == b.path;
}

std::string required(const Params& params, std::string_view key, ErrorCode code) {
  auto value = param(params, key);
  if (!value || value->empty()) fail(code, "missing " + std::string(key));
  return *value;
}

bool aud_names(const Json& aud, const Url& endpoint) {
  auto matches = [&](const Json& v) {
    if (!v.is_string()) return false;
    auto url = Url::try_parse(v.get<std::string>());
    return url && *url == endpoint;
  };
  if (aud.is_array()) {
    for (const auto& v : aud) {
      if (matches(v)) return true;
    }
    return false;
  }
  return matches(aud);
}

}  // namespace

ProviderMetadata OpConfig::metadata() const {
  return ProviderMetadata{issuer, registration_endpoint, authorization_endpoint,
                          token_endpoint, userinfo_endpoint, jwks_uri};
}

void OpConfig::validate() const {
  const std::string domain = registrable_domain(issuer.host);
  for (const Url* u : {&registration_endpoint, &authorization_endpoint, &token_endpoint,
                       &userinfo_endpoint, &jwks_uri}) {
    if (registrable_domain(u->host) != domain) {
      fail(ErrorCode::kInvalidArgument, "endpoint " + u->render() + " outside " + domain);
    }
  }
  if (users.empty()) fail(ErrorCode::kInvalidArgument, "no users");
}

OpConfig default_op_config(std::uint64_t seed) {
  OpConfig c;
  c.issuer = Url::parse("https://honestop.com/");
  c.registration_endpoint = Url::parse("https://honestop.com/register");
  c.authorization_endpoint = Url::parse("https://login.honestop.com/");
  c.token_endpoint = Url::parse("https://honestop.com/token");
  c.userinfo_endpoint = Url::parse("https://honestop.com/userinfo");
  c.jwks_uri = Url::parse("https://honestop.com/jwks");
  c.users.push_back({"alice", "wonderland", "Alice", "alice@honestop.com"});
  TokenSource keys(seed, "op-signing-key");
  c.signing_key = jose::Key::symmetric("op-1", keys.next_hex32());
  return c;
}

OpenIdProvider::OpenIdProvider(OpConfig config, std::uint64_t seed)
    : config_(std::move(config)), tokens_(seed, "op") {
  config_.validate();
}

EpochSeconds OpenIdProvider::now() const { return net_ ? net_->now() : 0; }

void OpenIdProvider::attach(simnet::Network& net) {
  net_ = &net;
  auto handler = [this](const HttpRequest& r) { return handle(r); };
  net.register_host(config_.issuer.host, simnet::HostOwner::kHonest, handler);
  if (config_.authorization_endpoint.host != config_.issuer.host) {
    net.register_host(config_.authorization_endpoint.host, simnet::HostOwner::kHonest, handler);
  }
}

HttpResponse OpenIdProvider::handle(const HttpRequest& request) {
  try {
    return route(request);
  } catch (const Error& e) {
    return HttpResponse::error(status_for(e.code()), e.code(), e.detail());
  }
}

HttpResponse OpenIdProvider::route(const HttpRequest& request) {
  const Url& url = request.url;
  const bool read = request.method != Method::kPost;

  if (url.host == config_.issuer.host && read) {
    if (url.path == "/.well-known/webfinger") {
      WebFingerResponse wf;
      wf.subject = param(url.query, "resource").value_or("");
      wf.links.push_back({kIssuerRel, config_.issuer});
      return HttpResponse::json(wf.to_json());
    }
    if (url.path == "/.well-known/openid-configuration") return HttpResponse::json(metadata().to_json());
  }
  if (same_endpoint(url, config_.authorization_endpoint) && read) return authorize_endpoint(request);
  if (url.host == config_.authorization_endpoint.host && url.path == config_.login_path &&
      request.method == Method::kPost) {
    return login_endpoint(request);
  }
  if (same_endpoint(url, config_.registration_endpoint) && request.method == Method::kPost) {
    auto body = simnet::parse_json_body(request.body);
    auto creds = handle_registration(body ? *body : Json());
    return HttpResponse::json(Json{{"client_id", creds.client_id}, {"client_secret", creds.client_secret}});
  }
  if (same_endpoint(url, config_.token_endpoint) && request.method == Method::kPost) {
    auto tokens = handle_token(request.form());
    return HttpResponse::json(Json{{"access_token", tokens.access_token},
                                   {"token_type", "Bearer"},
                                   {"expires_in", config_.id_token_lifetime},
                                   {"id_token", tokens.id_token}});
  }
  if (same_endpoint(url, config_.userinfo_endpoint) && read) {
    auto token = simnet::bearer_token(request.headers);
    if (!token) fail(ErrorCode::kInvalidToken, "no bearer token");
    return HttpResponse::json(handle_userinfo(*token));
  }
  if (same_endpoint(url, config_.jwks_uri) && read) {
    return HttpResponse::json(jose::jwks_to_json({config_.signing_key}));
  }
  return HttpResponse::text("not found", 404);
}

ClientCredentials OpenIdProvider::handle_registration(const Json& body) {
  if (!body.is_object() || !body.contains("client_uri") || !body["client_uri"].is_string()) {
    fail(ErrorCode::kMalformedRegistration, "client_uri required");
  }
  auto client_uri = Url::try_parse(body["client_uri"].get<std::string>());
  if (!client_uri) fail(ErrorCode::kMalformedRegistration, "client_uri is not a Url");

  RegisteredClient client;
  client.redirect_domain = client_uri->without_query();
  if (body.contains("token_endpoint_auth_method")) {
    if (!body["token_endpoint_auth_method"].is_string()) fail(ErrorCode::kMalformedRegistration, "auth method");
    client.auth_method = body["token_endpoint_auth_method"];
    if (client.auth_method != "client_secret_post" && client.auth_method != "client_secret_jwt" &&
        client.auth_method != "private_key_jwt") {
      fail(ErrorCode::kMalformedRegistration, "unsupported auth method " + client.auth_method);
    }
  }
  if (client.auth_method == "private_key_jwt") {
    if (!body.contains("jwks")) fail(ErrorCode::kMalformedRegistration, "private_key_jwt needs jwks");
    jose::KeySet keys;
    try {
      keys = jose::parse_jwks(body["jwks"]);
    } catch (const Error& e) {
      fail(ErrorCode::kMalformedRegistration, e.detail());
    }
    if (keys.size() != 1) fail(ErrorCode::kMalformedRegistration, "exactly one key expected");
    client.assertion_key = keys.begin()->second;
  }
  client.credentials.client_id = tokens_.next_hex32();
  client.credentials.client_secret = tokens_.next_hex32();
  ClientCredentials out = client.credentials;
  clients_.emplace(out.client_id, std::move(client));
  return out;
}

const RegisteredClient& OpenIdProvider::check_authorization_request(const Params& query) const {
  auto client_id = param(query, "client_id").value_or("");
  auto it = clients_.find(client_id);
  if (it == clients_.end()) fail(ErrorCode::kUnknownClient, client_id);
  auto redirect = Url::try_parse(param(query, "redirect_uri").value_or(""));
  const std::string prefix = it->second.redirect_domain.render();
  if (!redirect || redirect->render().compare(0, prefix.size(), prefix) != 0) {
    fail(ErrorCode::kInvalidRedirectUri, param(query, "redirect_uri").value_or(""));
  }
  auto type = param(query, "response_type").value_or("code");
  if (type != "code" && type != "id_token token") {
    fail(ErrorCode::kInvalidArgument, "unsupported response_type " + type);
  }
  return it->second;
}

Identity OpenIdProvider::authenticate(const std::string& username, const std::string& password) const {
  for (const auto& user : config_.users) {
    if (user.username == username && jose::constant_time_equal(user.password, password)) {
      return Identity{user.username, registrable_domain(config_.issuer.host)};
    }
  }
  fail(ErrorCode::kAuthenticationFailed, username);
}

HttpResponse OpenIdProvider::issue_authorization_response(const Params& query, const Identity& user) {
  const RegisteredClient& client = check_authorization_request(query);
  Url redirect = Url::parse(*param(query, "redirect_uri"));
  const std::string client_id = client.credentials.client_id;
  const std::string nonce = param(query, "nonce").value_or("");
  const std::string state = param(query, "state").value_or("");
  const std::string type = param(query, "response_type").value_or("code");

  Params out;
  if (type == "code") {
    AuthorizationGrant grant;
    grant.code = AuthorizationCode{tokens_.next_hex32(), client_id, user, now()};
    grant.nonce = nonce;
    grant.redirect_uri = redirect;
    out.emplace_back("code", grant.code.value);
    grants_.emplace(grant.code.value, std::move(grant));
  } else {
    AccessToken access = mint_access_token(client_id, user);
    out.emplace_back("access_token", access.value);
    out.emplace_back("token_type", "Bearer");
    out.emplace_back("id_token", mint_id_token(client_id, user, nonce));
  }
  if (!state.empty()) out.emplace_back("state", state);
  if (config_.issue_issuer_in_auth_response) out.emplace_back("iss", config_.issuer.render());

  if (type == "code") {
    Params query_out = redirect.query;
    query_out.insert(query_out.end(), out.begin(), out.end());
    redirect.query = std::move(query_out);
  } else {
    redirect.fragment = std::move(out);
  }
  return HttpResponse::redirect(redirect);
}

HttpResponse OpenIdProvider::authorize_endpoint(const HttpRequest& request) {
  check_authorization_request(request.url.query);
  if (auto sid = simnet::request_cookie(request.headers, "op_session")) {
    auto it = sessions_.find(*sid);
    if (it != sessions_.end()) return issue_authorization_response(request.url.query, it->second);
  }
  std::string id = tokens_.next_hex32();
  pending_.emplace(id, request.url.query);
  HttpResponse page = HttpResponse::text(
      "<form method=\"post\" action=\"" + config_.login_path +
      "\"><input name=\"username\"><input name=\"password\" type=\"password\">"
      "<input type=\"hidden\" name=\"request\" value=\"" + id + "\"></form>");
  page.headers.emplace_back(simnet::kLoginFormHeader, config_.login_path);
  page.headers.emplace_back(simnet::kLoginRequestHeader, id);
  return page;
}

HttpResponse OpenIdProvider::login_endpoint(const HttpRequest& request) {
  Params form = request.form();
  auto it = pending_.find(param(form, "request").value_or(""));
  if (it == pending_.end()) fail(ErrorCode::kAuthenticationFailed, "no pending request");
  Identity user = authenticate(param(form, "username").value_or(""), param(form, "password").value_or(""));
  Params query = std::move(it->second);
  pending_.erase(it);
  std::string sid = tokens_.next_hex32();
  sessions_.emplace(sid, user);
  HttpResponse response = issue_authorization_response(query, user);
  response.headers.emplace_back("Set-Cookie", "op_session=" + sid + "; Secure; HttpOnly");
  return response;
}

const RegisteredClient& OpenIdProvider::authenticate_client(const Params& form) const {
  if (auto assertion = param(form, "client_assertion")) {
    Json claims;
    try {
      claims = jose::peek_claims(*assertion);
    } catch (const Error&) {
      fail(ErrorCode::kClientAuthFailed, "malformed assertion");
    }
    if (!claims.is_object() || !claims.contains("iss") || !claims["iss"].is_string()) {
      fail(ErrorCode::kClientAuthFailed, "assertion without iss");
    }
    auto it = clients_.find(claims["iss"].get<std::string>());
    if (it == clients_.end()) fail(ErrorCode::kClientAuthFailed, "unknown client");
    const RegisteredClient& client = it->second;
    jose::Key key;
    if (client.auth_method == "client_secret_jwt") {
      key = jose::Key::symmetric("", client.credentials.client_secret);
    } else if (client.auth_method == "private_key_jwt") {
      key = *client.assertion_key;
    } else {
      fail(ErrorCode::kClientAuthFailed, "client registered for " + client.auth_method);
    }
    try {
      jose::jws_verify(*assertion, key);
    } catch (const Error&) {
      fail(ErrorCode::kClientAuthFailed, "assertion signature");
    }
    if (claims.value("sub", Json()) != claims["iss"]) fail(ErrorCode::kClientAuthFailed, "sub != iss");
    if (!claims.contains("aud") || !aud_names(claims["aud"], config_.token_endpoint)) {
      fail(ErrorCode::kAudienceMismatch, claims.value("aud", Json()).dump());
    }
    if (!claims.contains("exp") || !claims["exp"].is_number_integer() ||
        now() > claims["exp"].get<EpochSeconds>() + kDefaultClockSkew) {
      fail(ErrorCode::kClientAuthFailed, "assertion expired");
    }
    return client;
  }
  auto it = clients_.find(param(form, "client_id").value_or(""));
  if (it == clients_.end()) fail(ErrorCode::kClientAuthFailed, "unknown client");
  if (it->second.auth_method != "client_secret_post") {
    fail(ErrorCode::kClientAuthFailed, "client registered for " + it->second.auth_method);
  }
  if (!jose::constant_time_equal(param(form, "client_secret").value_or(""),
                                 it->second.credentials.client_secret)) {
    fail(ErrorCode::kClientAuthFailed, "wrong secret");
  }
  return it->second;
}

TokenResponse OpenIdProvider::handle_token(const Params& form) {
  const RegisteredClient& client = authenticate_client(form);
  const std::string code = required(form, "code", ErrorCode::kUnknownCode);
  auto it = grants_.find(code);
  if (it == grants_.end() || it->second.code.issued_to != client.credentials.client_id) {
    fail(ErrorCode::kUnknownCode, code);
  }
  AuthorizationGrant& grant = it->second;
  if (grant.redeemed) {
    ++grant.replay_attempts;
    fail(ErrorCode::kCodeReplayed, code);
  }
  if (auto redirect = param(form, "redirect_uri")) {
    auto url = Url::try_parse(*redirect);
    if (!url || !(*url == grant.redirect_uri)) fail(ErrorCode::kInvalidRedirectUri, *redirect);
  }
  grant.redeemed = true;
  TokenResponse out;
  out.access_token = mint_access_token(client.credentials.client_id, grant.code.subject).value;
  out.id_token = mint_id_token(client.credentials.client_id, grant.code.subject, grant.nonce);
  return out;
}

Json OpenIdProvider::handle_userinfo(const std::string& access_token) const {
  auto it = access_tokens_.find(access_token);
  if (it == access_tokens_.end()) fail(ErrorCode::kInvalidToken, "unknown access token");
  for (const auto& user : config_.users) {
    if (user.username != it->second.subject.local) continue;
    return Json{{"sub", user.username},
                {"name", user.name},
                {"preferred_username", user.username},
                {"email", user.email},
                {"email_verified", true}};
  }
  fail(ErrorCode::kInvalidToken, "subject gone");
}

std::string OpenIdProvider::mint_id_token(const std::string& client_id, const Identity& subject,
                                          const std::string& nonce) {
  IdTokenClaims claims;
  claims.iss = config_.issuer;
  claims.sub = subject.local;
  claims.iat = now();
  claims.exp = claims.iat + config_.id_token_lifetime;
  claims.nonce = nonce;
  claims.aud = {client_id};
  return jose::jws_sign(jose::JoseHeader{}, claims.to_json(), config_.signing_key);
}

AccessToken OpenIdProvider::mint_access_token(const std::string& client_id, const Identity& subject) {
  AccessToken token{tokens_.next_hex32(), client_id, subject, now()};
  access_tokens_.emplace(token.value, token);
  return token;
}

}  // namespace oidclab::op
