// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "simnet/user_agent.hpp"

namespace oidclab::simnet {

HttpResponse UserAgent::navigate(const Url& url, int max_redirects) {
  return send(HttpRequest::get(url, as_), max_redirects);
}

HttpResponse UserAgent::submit_form(const Url& action, const Params& form, int max_redirects) {
  return send(HttpRequest::post_form(action, as_, form), max_redirects);
}

void UserAgent::remember_login(const std::string& host, LoginSecret secret) {
  logins_[host] = std::move(secret);
}

std::optional<std::string> UserAgent::csrf_token(const std::string& host) const {
  auto it = csrf_.find(host);
  if (it == csrf_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> UserAgent::cookie(const std::string& host, const std::string& name) const {
  auto jar = cookies_.find(host);
  if (jar == cookies_.end()) return std::nullopt;
  auto it = jar->second.find(name);
  if (it == jar->second.end()) return std::nullopt;
  return it->second;
}

Headers UserAgent::cookie_header(const std::string& host) const {
  auto jar = cookies_.find(host);
  if (jar == cookies_.end() || jar->second.empty()) return {};
  std::string value;
  for (const auto& [name, v] : jar->second) {
    if (!value.empty()) value += "; ";
    value += name + "=" + v;
  }
  return {{"Cookie", value}};
}

void UserAgent::absorb(const std::string& host, const HttpResponse& response) {
  for (const auto& [k, v] : response.headers) {
    if (to_lower(k) != "set-cookie") continue;
    std::string pair = v.substr(0, v.find(';'));
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) continue;
    cookies_[host][pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  if (auto token = response.header(kCsrfTokenHeader)) csrf_[host] = *token;
}

HttpResponse UserAgent::send(HttpRequest request, int max_redirects) {
  if (max_redirects < 0) fail(ErrorCode::kInvalidArgument, "max_redirects < 0");
  int hops = 0;
  bool relayed = false;
  bool logged_in = false;
  for (;;) {
    // The fragment stays in the browser; the network strips it on the wire.
    current_ = request.url;
    for (auto& h : cookie_header(request.url.host)) request.headers.push_back(std::move(h));
    HttpResponse response = net_.dispatch(request);
    const std::string host = request.url.host;
    absorb(host, response);

    if (response.status == 302) {
      auto location = response.header("Location");
      if (!location) return response;
      if (hops == max_redirects) fail(ErrorCode::kTooManyRedirects, *location);
      ++hops;
      request = HttpRequest::get(Url::parse(*location), as_);
      continue;
    }

    if (response.status == 200 && !relayed && !current_.fragment.empty()) {
      if (auto relay = response.header(kFragmentRelayHeader)) {
        relayed = true;
        request = HttpRequest::post_form(current_.with_path(*relay), as_, current_.fragment);
        continue;
      }
    }

    if (response.status == 200 && !logged_in) {
      auto action = response.header(kLoginFormHeader);
      auto login = logins_.find(host);
      if (action && login != logins_.end()) {
        logged_in = true;
        Params form{{"username", login->second.username}, {"password", login->second.password}};
        if (auto pending = response.header(kLoginRequestHeader)) form.emplace_back("request", *pending);
        request = HttpRequest::post_form(current_.with_path(*action), as_, form);
        continue;
      }
    }
    return response;
  }
}

HttpResponse user_agent_navigate(UserAgent& ua, const Url& url, int max_redirects) {
  return ua.navigate(url, max_redirects);
}

}  // namespace oidclab::simnet
