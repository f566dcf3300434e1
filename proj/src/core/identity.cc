// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/identity.hpp"

#include <cctype>

#include "core/error.hpp"

namespace oidclab {

Identity parse_identity(std::string_view raw) {
  for (unsigned char c : raw) {
    if (std::isspace(c) || std::iscntrl(c)) fail(ErrorCode::kMalformedIdentity, "whitespace");
  }
  auto at = raw.rfind('@');
  if (at == std::string_view::npos) fail(ErrorCode::kMalformedIdentity, "missing '@'");
  auto local = raw.substr(0, at);
  if (local.empty()) fail(ErrorCode::kMalformedIdentity, "empty local part");
  if (local.find('@') != std::string_view::npos) {
    fail(ErrorCode::kMalformedIdentity, "more than one '@'");
  }
  std::string domain = to_lower(raw.substr(at + 1));
  if (domain.find('.') == std::string::npos || !is_valid_hostname(domain)) {
    fail(ErrorCode::kMalformedIdentity, "bad domain '" + domain + "'");
  }
  return Identity{to_lower(local), std::move(domain)};
}

Url webfinger_url(std::string_view domain) {
  Url url;
  url.scheme = "http";
  url.port = 80;
  url.host = to_lower(domain);
  url.path = "/.well-known/webfinger";
  return url;
}

}  // namespace oidclab
