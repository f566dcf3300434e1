// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/url.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "core/error.hpp"

namespace oidclab {
namespace {

bool is_unreserved(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_path_char(unsigned char c) {
  return is_unreserved(c) || c == '/' || c == '%' || c == ':' || c == '@' || c == '!' ||
         c == '$' || c == '&' || c == '\'' || c == '(' || c == ')' || c == '*' || c == '+' ||
         c == ',' || c == ';' || c == '=';
}

}  // namespace

std::optional<std::string> param(const Params& params, std::string_view key) {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string percent_encode(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    if (is_unreserved(c)) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0f]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view encoded) {
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    char c = encoded[i];
    if (c == '%' && i + 2 < encoded.size()) {
      int hi = hex_value(encoded[i + 1]);
      int lo = hex_value(encoded[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(c == '+' ? ' ' : c);
  }
  return out;
}

std::string encode_params(const Params& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out.push_back('&');
    out += percent_encode(k);
    out.push_back('=');
    out += percent_encode(v);
  }
  return out;
}

Params decode_params(std::string_view encoded) {
  Params out;
  while (!encoded.empty()) {
    auto amp = encoded.find('&');
    auto pair = encoded.substr(0, amp);
    encoded = amp == std::string_view::npos ? std::string_view{} : encoded.substr(amp + 1);
    if (pair.empty()) continue;
    auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      out.emplace_back(percent_decode(pair), "");
    } else {
      out.emplace_back(percent_decode(pair.substr(0, eq)), percent_decode(pair.substr(eq + 1)));
    }
  }
  return out;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_valid_hostname(std::string_view host) {
  if (host.empty() || host.size() > 253) return false;
  std::size_t label_len = 0;
  for (std::size_t i = 0; i < host.size(); ++i) {
    unsigned char c = host[i];
    if (c == '.') {
      if (label_len == 0) return false;
      label_len = 0;
      continue;
    }
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
    if (c == '-' && (label_len == 0 || i + 1 == host.size() || host[i + 1] == '.')) return false;
    ++label_len;
    if (label_len > 63) return false;
  }
  return label_len > 0;
}

std::optional<Url> Url::try_parse(std::string_view raw) {
  auto sep = raw.find("://");
  if (sep == std::string_view::npos) return std::nullopt;
  Url url;
  url.scheme = to_lower(raw.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") return std::nullopt;
  url.port = url.scheme == "https" ? 443 : 80;

  std::string_view rest = raw.substr(sep + 3);
  std::string_view fragment;
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    fragment = rest.substr(hash + 1);
    rest = rest.substr(0, hash);
  }
  std::string_view query;
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    query = rest.substr(q + 1);
    rest = rest.substr(0, q);
  }
  auto slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  std::string_view path = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);

  if (authority.find('@') != std::string_view::npos) return std::nullopt;
  std::string_view host = authority;
  if (auto colon = authority.find(':'); colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    auto port_text = authority.substr(colon + 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), value);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || value == 0 ||
        value > 65535) {
      return std::nullopt;
    }
    url.port = static_cast<std::uint16_t>(value);
  }
  url.host = to_lower(host);
  if (!is_valid_hostname(url.host)) return std::nullopt;

  if (path.empty()) path = "/";
  for (unsigned char c : path) {
    if (!is_path_char(c)) return std::nullopt;
  }
  url.path = std::string(path);
  url.query = decode_params(query);
  url.fragment = decode_params(fragment);
  return url;
}

Url Url::parse(std::string_view raw) {
  auto url = try_parse(raw);
  if (!url) fail(ErrorCode::kMalformedUrl, std::string(raw));
  return *std::move(url);
}

bool Url::is_default_port() const {
  return (scheme == "http" && port == 80) || (scheme == "https" && port == 443);
}

std::string Url::origin() const {
  std::string out = scheme + "://" + host;
  if (!is_default_port()) out += ":" + std::to_string(port);
  return out;
}

std::string Url::render() const {
  std::string out = origin();
  out += path.empty() ? "/" : path;
  if (!query.empty()) out += "?" + encode_params(query);
  if (!fragment.empty()) out += "#" + encode_params(fragment);
  return out;
}

Url Url::without_query() const {
  Url u = *this;
  u.query.clear();
  u.fragment.clear();
  return u;
}

Url Url::with_path(std::string_view new_path) const {
  Url u = without_query();
  u.path = new_path.empty() ? "/" : std::string(new_path);
  return u;
}

Url Url::with_query(Params params) const {
  Url u = *this;
  u.query = std::move(params);
  return u;
}

std::string registrable_domain(std::string_view host) {
  auto last = host.rfind('.');
  if (last == std::string_view::npos || last == 0) return std::string(host);
  auto second = host.rfind('.', last - 1);
  if (second == std::string_view::npos) return std::string(host);
  return std::string(host.substr(second + 1));
}

}  // namespace oidclab
