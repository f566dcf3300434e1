// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oidclab {

using Params = std::vector<std::pair<std::string, std::string>>;

// Looks up the first value for `key`.
std::optional<std::string> param(const Params& params, std::string_view key);

std::string percent_encode(std::string_view raw);
std::string percent_decode(std::string_view encoded);

// application/x-www-form-urlencoded style "k=v&k2=v2", order preserved.
std::string encode_params(const Params& params);
Params decode_params(std::string_view encoded);

// Lowercase DNS name: dot-separated labels of [a-z0-9-]. Uppercase input is
// accepted by callers that lowercase first.
bool is_valid_hostname(std::string_view host);

std::string to_lower(std::string_view s);

// An http(s) URL in normalized form. Parsing lowercases scheme and host,
// elides default ports, and maps an empty path to "/", so two Urls are equal
// iff their renderings are identical. Userinfo ("user@host") is rejected.
//
// The fragment is kept as a parameter list because the only fragments the
// lab produces are implicit-flow authorization responses.
struct Url {
  std::string scheme = "http";
  std::string host;
  std::uint16_t port = 80;
  std::string path = "/";
  Params query;
  Params fragment;

  static Url parse(std::string_view raw);
  static std::optional<Url> try_parse(std::string_view raw);

  std::string render() const;
  // scheme://host[:port], no trailing slash.
  std::string origin() const;
  bool is_default_port() const;

  // Same Url with query and fragment cleared.
  Url without_query() const;
  Url with_path(std::string_view new_path) const;
  Url with_query(Params params) const;

  friend bool operator==(const Url& a, const Url& b) { return a.render() == b.render(); }
};

// Registrable domain in the simulated namespace: the last two labels.
std::string registrable_domain(std::string_view host);

}  // namespace oidclab
