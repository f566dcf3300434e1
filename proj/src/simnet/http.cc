// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "simnet/http.hpp"

#include <algorithm>
#include <charconv>

namespace oidclab::simnet {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kGet: return "GET";
    case Method::kHead: return "HEAD";
    case Method::kPost: return "POST";
  }
  return "?";
}

std::string_view principal_name(Principal p) {
  switch (p) {
    case Principal::kClient: return "client";
    case Principal::kUserAgent: return "user_agent";
    case Principal::kOp: return "op";
    case Principal::kAdversary: return "adversary";
  }
  return "?";
}

std::string_view owner_name(HostOwner o) {
  switch (o) {
    case HostOwner::kHonest: return "honest";
    case HostOwner::kAdversary: return "adversary";
    case HostOwner::kUnregistered: return "unregistered";
  }
  return "?";
}

std::optional<std::string> header(const Headers& headers, std::string_view name) {
  for (const auto& [k, v] : headers) {
    if (k.size() == name.size() && to_lower(k) == to_lower(name)) return v;
  }
  return std::nullopt;
}

std::optional<std::string> request_cookie(const Headers& headers, std::string_view name) {
  auto raw = header(headers, "Cookie");
  if (!raw) return std::nullopt;
  std::string_view rest = *raw;
  while (!rest.empty()) {
    auto end = rest.find(';');
    std::string_view pair = rest.substr(0, end);
    while (!pair.empty() && pair.front() == ' ') pair.remove_prefix(1);
    auto eq = pair.find('=');
    if (eq != std::string_view::npos && pair.substr(0, eq) == name) return std::string(pair.substr(eq + 1));
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end + 1);
  }
  return std::nullopt;
}

std::optional<std::string> bearer_token(const Headers& headers) {
  auto raw = header(headers, "Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (!raw || raw->size() <= kPrefix.size() || raw->compare(0, kPrefix.size(), kPrefix) != 0) {
    return std::nullopt;
  }
  return raw->substr(kPrefix.size());
}

HttpRequest HttpRequest::get(Url url, Principal from, Headers headers) {
  return HttpRequest{Method::kGet, std::move(url), std::move(headers), {}, from};
}

HttpRequest HttpRequest::head(Url url, Principal from) {
  return HttpRequest{Method::kHead, std::move(url), {}, {}, from};
}

HttpRequest HttpRequest::post_form(Url url, Principal from, const Params& form, Headers headers) {
  headers.emplace_back("Content-Type", "application/x-www-form-urlencoded");
  return HttpRequest{Method::kPost, std::move(url), std::move(headers), encode_params(form), from};
}

HttpRequest HttpRequest::post_json(Url url, Principal from, const Json& body) {
  return HttpRequest{Method::kPost, std::move(url), {{"Content-Type", "application/json"}},
                     body.dump(), from};
}

PatternBody::PatternBody(std::uint64_t length, std::string pattern)
    : length_(length), pattern_(pattern.empty() ? std::string("A") : std::move(pattern)) {}

std::string PatternBody::read(std::uint64_t offset, std::size_t max) const {
  if (offset >= length_) return {};
  std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(max, length_ - offset));
  std::string out;
  out.reserve(n);
  std::size_t pos = static_cast<std::size_t>(offset % pattern_.size());
  while (out.size() < n) {
    std::size_t take = std::min(n - out.size(), pattern_.size() - pos);
    out.append(pattern_, pos, take);
    pos = 0;
  }
  return out;
}

std::optional<std::uint64_t> HttpResponse::content_length() const {
  auto value = header("Content-Length");
  if (!value) return std::nullopt;
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(value->data(), value->data() + value->size(), n);
  if (ec != std::errc() || ptr != value->data() + value->size()) return std::nullopt;
  return n;
}

HttpResponse HttpResponse::json(const Json& body, int status) {
  HttpResponse r;
  r.status = status;
  r.headers.emplace_back("Content-Type", "application/json");
  r.body = body.dump();
  return r;
}

HttpResponse HttpResponse::text(std::string body, int status) {
  HttpResponse r;
  r.status = status;
  r.headers.emplace_back("Content-Type", "text/plain");
  r.body = std::move(body);
  return r;
}

HttpResponse HttpResponse::redirect(const Url& location) {
  HttpResponse r;
  r.status = 302;
  r.headers.emplace_back("Location", location.render());
  return r;
}

HttpResponse HttpResponse::error(int status, ErrorCode code, std::string_view detail) {
  return json(Json{{"error", std::string(error_name(code))}, {"error_description", std::string(detail)}},
              status);
}

std::optional<Json> parse_json_body(std::string_view body) {
  auto parsed = Json::parse(body, nullptr, false);
  if (parsed.is_discarded()) return std::nullopt;
  return parsed;
}

std::optional<ErrorCode> error_code_of(const HttpResponse& response) {
  if (response.status < 400) return std::nullopt;
  auto doc = parse_json_body(response.body);
  if (!doc || !doc->is_object() || !doc->contains("error") || !(*doc)["error"].is_string()) {
    return std::nullopt;
  }
  return error_from_name((*doc)["error"].get<std::string>());
}

}  // namespace oidclab::simnet
