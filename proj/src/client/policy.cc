// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "client/policy.hpp"

namespace oidclab::client {

std::string_view auth_mode_name(ClientAuthMode mode) {
  switch (mode) {
    case ClientAuthMode::kSecretPost: return "secret_post";
    case ClientAuthMode::kClientSecretJwt: return "client_secret_jwt";
    case ClientAuthMode::kPrivateKeyJwt: return "private_key_jwt";
  }
  return "?";
}

ClientAuthMode auth_mode_from_name(std::string_view name) {
  for (auto m : {ClientAuthMode::kSecretPost, ClientAuthMode::kClientSecretJwt,
                 ClientAuthMode::kPrivateKeyJwt}) {
    if (auth_mode_name(m) == name) return m;
  }
  fail(ErrorCode::kInvalidArgument, "unknown client auth mode " + std::string(name));
}

std::string_view registration_auth_method(ClientAuthMode mode) {
  return mode == ClientAuthMode::kSecretPost ? "client_secret_post" : auth_mode_name(mode);
}

bool HardeningPolicy::whitelisted(const Url& url) const {
  if (!whitelist) return true;
  for (const auto& allowed : *whitelist) {
    if (allowed.origin() == url.origin()) return true;
  }
  return false;
}

Json HardeningPolicy::to_json() const {
  Json out;
  if (whitelist) {
    Json list = Json::array();
    for (const auto& u : *whitelist) list.push_back(u.origin());
    out["whitelist"] = std::move(list);
  } else {
    out["whitelist"] = nullptr;
  }
  out["endpoint_restriction"] = endpoint_restriction;
  out["fetch_policy"] = Json{{"head_check", fetch_policy.head_check},
                             {"byte_cap", fetch_policy.byte_cap},
                             {"chunk", fetch_policy.chunk}};
  out["csrf_protection"] = csrf_protection;
  out["client_auth_mode"] = std::string(auth_mode_name(client_auth_mode));
  out["require_issuer_binding"] = require_issuer_binding;
  out["sanitize_userinfo"] = sanitize_userinfo;
  return out;
}

namespace {

bool get_bool(const Json& j, const char* key) {
  if (!j[key].is_boolean()) fail(ErrorCode::kInvalidArgument, std::string(key) + " must be a boolean");
  return j[key].get<bool>();
}

std::uint64_t get_u64(const Json& j, const char* key) {
  if (!j[key].is_number_unsigned()) {
    fail(ErrorCode::kInvalidArgument, std::string(key) + " must be a non-negative integer");
  }
  return j[key].get<std::uint64_t>();
}

}  // namespace

HardeningPolicy HardeningPolicy::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, "defenses must be an object");
  HardeningPolicy p;
  for (const auto& [key, value] : j.items()) {
    if (key == "whitelist") {
      if (value.is_null()) continue;
      if (!value.is_array()) fail(ErrorCode::kInvalidArgument, "whitelist must be a list");
      std::vector<Url> list;
      for (const auto& v : value) {
        auto url = v.is_string() ? Url::try_parse(v.get<std::string>()) : std::nullopt;
        if (!url) fail(ErrorCode::kInvalidArgument, "whitelist entry " + v.dump());
        list.push_back(*url);
      }
      p.whitelist = std::move(list);
    } else if (key == "endpoint_restriction") {
      p.endpoint_restriction = get_bool(j, "endpoint_restriction");
    } else if (key == "fetch_policy") {
      if (!value.is_object()) fail(ErrorCode::kInvalidArgument, "fetch_policy must be an object");
      for (const auto& [k, v] : value.items()) {
        if (k == "head_check") {
          p.fetch_policy.head_check = get_bool(value, "head_check");
        } else if (k == "byte_cap") {
          p.fetch_policy.byte_cap = get_u64(value, "byte_cap");
        } else if (k == "chunk") {
          p.fetch_policy.chunk = static_cast<std::size_t>(get_u64(value, "chunk"));
        } else {
          fail(ErrorCode::kInvalidArgument, "unknown fetch_policy member " + k);
        }
      }
      p.fetch_policy.validate();
    } else if (key == "csrf_protection") {
      p.csrf_protection = get_bool(j, "csrf_protection");
    } else if (key == "client_auth_mode") {
      if (!value.is_string()) fail(ErrorCode::kInvalidArgument, "client_auth_mode must be a string");
      p.client_auth_mode = auth_mode_from_name(value.get<std::string>());
    } else if (key == "require_issuer_binding") {
      p.require_issuer_binding = get_bool(j, "require_issuer_binding");
    } else if (key == "sanitize_userinfo") {
      p.sanitize_userinfo = get_bool(j, "sanitize_userinfo");
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown defense " + key);
    }
  }
  return p;
}

bool same_site(const Url& a, const Url& b) {
  return registrable_domain(a.host) == registrable_domain(b.host);
}

std::string html_escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace oidclab::client
