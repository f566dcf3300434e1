// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include "simnet/network.hpp"

namespace oidclab::simnet {

// Response headers the simulated browser understands besides Set-Cookie and
// Location.
inline constexpr const char* kCsrfTokenHeader = "X-Csrf-Token";
// A page that wants the fragment of the Url it was loaded from names the
// path to POST it to. Stands in for page script reading location.hash.
inline constexpr const char* kFragmentRelayHeader = "X-Fragment-Relay";
// Login page: action path and the pending request id to echo back.
inline constexpr const char* kLoginFormHeader = "X-Login-Form";
inline constexpr const char* kLoginRequestHeader = "X-Login-Request";

struct LoginSecret {
  std::string username;
  std::string password;
};

// The End-User's browser. Cookies are kept per exact host and only ever sent
// back to that host.
class UserAgent {
 public:
  explicit UserAgent(Network& net, Principal as = Principal::kUserAgent) : net_(net), as_(as) {}

  // Follows up to max_redirects 302 hops. Throws kTooManyRedirects when the
  // chain is longer, kInvalidArgument when max_redirects < 0.
  HttpResponse navigate(const Url& url, int max_redirects = kDefaultMaxRedirects);
  HttpResponse submit_form(const Url& action, const Params& form,
                           int max_redirects = kDefaultMaxRedirects);

  // Login forms served by `host` are filled in and submitted automatically.
  void remember_login(const std::string& host, LoginSecret secret);

  std::optional<std::string> csrf_token(const std::string& host) const;
  std::optional<std::string> cookie(const std::string& host, const std::string& name) const;
  const Url& current_url() const { return current_; }

 private:
  HttpResponse send(HttpRequest request, int max_redirects);
  void absorb(const std::string& host, const HttpResponse& response);
  Headers cookie_header(const std::string& host) const;

  Network& net_;
  Principal as_;
  std::map<std::string, std::map<std::string, std::string>> cookies_;
  std::map<std::string, std::string> csrf_;
  std::map<std::string, LoginSecret> logins_;
  Url current_;
};

HttpResponse user_agent_navigate(UserAgent& ua, const Url& url, int max_redirects = kDefaultMaxRedirects);

}  // namespace oidclab::simnet
