// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/model.hpp"

#include "core/error.hpp"

namespace oidclab {
namespace {

Url metadata_url(const Json& j, const char* member) {
  if (!j.contains(member) || !j[member].is_string()) {
    fail(ErrorCode::kMalformedMetadata, std::string("missing ") + member);
  }
  auto url = Url::try_parse(j[member].get<std::string>());
  if (!url) fail(ErrorCode::kMalformedMetadata, std::string("bad url in ") + member);
  return *url;
}

}  // namespace

const Url& WebFingerResponse::issuer_href() const {
  const Url* found = nullptr;
  for (const auto& link : links) {
    if (link.rel != kIssuerRel) continue;
    if (found) fail(ErrorCode::kMalformedMetadata, "several issuer links");
    found = &link.href;
  }
  if (!found) fail(ErrorCode::kMalformedMetadata, "no issuer link");
  return *found;
}

Json WebFingerResponse::to_json() const {
  Json out;
  out["subject"] = subject;
  out["links"] = Json::array();
  for (const auto& link : links) {
    out["links"].push_back(Json{{"rel", link.rel}, {"href", link.href.render()}});
  }
  return out;
}

WebFingerResponse WebFingerResponse::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("links") || !j["links"].is_array()) {
    fail(ErrorCode::kMalformedMetadata, "webfinger document");
  }
  WebFingerResponse out;
  if (j.contains("subject") && j["subject"].is_string()) out.subject = j["subject"];
  for (const auto& link : j["links"]) {
    if (!link.is_object() || !link.contains("rel") || !link.contains("href") ||
        !link["rel"].is_string() || !link["href"].is_string()) {
      fail(ErrorCode::kMalformedMetadata, "webfinger link");
    }
    auto href = Url::try_parse(link["href"].get<std::string>());
    if (!href) fail(ErrorCode::kMalformedMetadata, "webfinger href");
    out.links.push_back({link["rel"].get<std::string>(), *href});
  }
  return out;
}

Json ProviderMetadata::to_json() const {
  return Json{
      {"issuer", issuer.render()},
      {"registration_endpoint", registration_endpoint.render()},
      {"authorization_endpoint", authorization_endpoint.render()},
      {"token_endpoint", token_endpoint.render()},
      {"userinfo_endpoint", userinfo_endpoint.render()},
      {"jwks_uri", jwks_uri.render()},
  };
}

ProviderMetadata ProviderMetadata::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kMalformedMetadata, "metadata is not an object");
  return ProviderMetadata{
      metadata_url(j, "issuer"),
      metadata_url(j, "registration_endpoint"),
      metadata_url(j, "authorization_endpoint"),
      metadata_url(j, "token_endpoint"),
      metadata_url(j, "userinfo_endpoint"),
      metadata_url(j, "jwks_uri"),
  };
}

}  // namespace oidclab
