// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/url.hpp"

namespace oidclab::simnet {

enum class Method { kGet, kHead, kPost };
enum class Principal { kClient, kUserAgent, kOp, kAdversary };
enum class HostOwner { kHonest, kAdversary, kUnregistered };

std::string_view method_name(Method m);
std::string_view principal_name(Principal p);
std::string_view owner_name(HostOwner o);

using Headers = Params;

// Case-insensitive header lookup.
std::optional<std::string> header(const Headers& headers, std::string_view name);

// Value of cookie `name` from a request's Cookie header.
std::optional<std::string> request_cookie(const Headers& headers, std::string_view name);

// Token from "Authorization: Bearer <token>".
std::optional<std::string> bearer_token(const Headers& headers);

struct HttpRequest {
  Method method = Method::kGet;
  Url url;
  Headers headers;
  std::string body;
  Principal initiator = Principal::kClient;

  static HttpRequest get(Url url, Principal from, Headers headers = {});
  static HttpRequest head(Url url, Principal from);
  static HttpRequest post_form(Url url, Principal from, const Params& form, Headers headers = {});
  static HttpRequest post_json(Url url, Principal from, const Json& body);

  Params form() const { return decode_params(body); }
};

// A response body produced on demand, so a handler can describe a payload of
// any length without holding it in memory.
class BodySource {
 public:
  virtual ~BodySource() = default;
  virtual std::uint64_t size() const = 0;
  virtual std::string read(std::uint64_t offset, std::size_t max) const = 0;
};

// `length` bytes of `pattern` repeated.
class PatternBody final : public BodySource {
 public:
  PatternBody(std::uint64_t length, std::string pattern);
  std::uint64_t size() const override { return length_; }
  std::string read(std::uint64_t offset, std::size_t max) const override;

 private:
  std::uint64_t length_;
  std::string pattern_;
};

struct HttpResponse {
  int status = 200;
  Headers headers;
  // Handlers set either `body` or `stream`. After dispatch, `body` holds the
  // bytes the caller actually pulled and `stream` is empty.
  std::string body;
  std::shared_ptr<const BodySource> stream;
  // Set by the network when the caller stopped pulling before the end.
  bool truncated = false;

  std::optional<std::string> header(std::string_view name) const {
    return simnet::header(headers, name);
  }
  std::optional<std::uint64_t> content_length() const;

  static HttpResponse json(const Json& body, int status = 200);
  static HttpResponse text(std::string body, int status = 200);
  static HttpResponse redirect(const Url& location);
  // {"error": <name>, "error_description": <detail>}
  static HttpResponse error(int status, ErrorCode code, std::string_view detail = {});
};

// Parses a JSON body; nullopt when it is not JSON.
std::optional<Json> parse_json_body(std::string_view body);

// Reconstructs the error code carried by HttpResponse::error, if any.
std::optional<ErrorCode> error_code_of(const HttpResponse& response);

}  // namespace oidclab::simnet
