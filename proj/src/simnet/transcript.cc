// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "simnet/transcript.hpp"

#include "jose/crypto.hpp"

namespace oidclab::simnet {

std::string TranscriptEvent::path() const {
  auto parsed = Url::try_parse(url);
  return parsed ? parsed->path : std::string{};
}

bool TranscriptEvent::request_contains(std::string_view needle) const {
  if (needle.empty()) return false;
  if (url.find(needle) != std::string::npos) return true;
  // Query values are percent-encoded on the wire.
  if (auto parsed = Url::try_parse(url)) {
    for (const auto& [k, v] : parsed->query) {
      if (v.find(needle) != std::string::npos) return true;
    }
  }
  for (const auto& [k, v] : request_headers) {
    if (v.find(needle) != std::string::npos) return true;
  }
  if (request_body.find(needle) != std::string::npos) return true;
  for (const auto& [k, v] : decode_params(request_body)) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

Json TranscriptEvent::to_json() const {
  Json headers = Json::array();
  for (const auto& [k, v] : request_headers) headers.push_back(Json::array({k, v}));
  return Json{
      {"seq", seq},
      {"initiator", principal_name(initiator)},
      {"method", method_name(method)},
      {"url", url},
      {"host", host},
      {"host_owner", owner_name(host_owner)},
      {"status", status},
      {"request_bytes", request_bytes},
      {"response_bytes", response_bytes},
      {"request_headers", std::move(headers)},
      {"request_body", request_body},
  };
}

std::uint64_t Transcript::bytes_pulled_by(Principal p) const {
  std::uint64_t total = 0;
  for (const auto& e : events_) {
    if (e.initiator == p) total += e.response_bytes;
  }
  return total;
}

std::uint64_t Transcript::total_response_bytes() const {
  std::uint64_t total = 0;
  for (const auto& e : events_) total += e.response_bytes;
  return total;
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& e : events_) {
    // Bodies may carry arbitrary bytes; replace invalid UTF-8 rather than throw.
    out += e.to_json().dump(-1, ' ', false, Json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

std::string Transcript::digest() const { return jose::to_hex(jose::sha256(to_jsonl())); }

}  // namespace oidclab::simnet
