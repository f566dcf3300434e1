// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "core/url.hpp"

namespace oidclab {

// An End-User identifier of the form local@domain. The domain selects the
// discovery service, which is the whole attack surface of discovery.
struct Identity {
  std::string local;
  std::string domain;

  std::string render() const { return local + "@" + domain; }

  friend bool operator==(const Identity&, const Identity&) = default;
};

// Throws Error(kMalformedIdentity) unless raw is local@domain with a
// non-empty local part, a dotted hostname, and no whitespace anywhere.
Identity parse_identity(std::string_view raw);

// http://<domain>/.well-known/webfinger. The simulated transport ignores TLS,
// so the scheme is plain http.
Url webfinger_url(std::string_view domain);

}  // namespace oidclab
