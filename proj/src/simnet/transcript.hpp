// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simnet/http.hpp"

namespace oidclab::simnet {

// One request/response exchange. seq is assigned when the request is issued,
// so a request made from inside a handler sorts after the request that
// triggered it.
struct TranscriptEvent {
  std::uint64_t seq = 0;
  Principal initiator = Principal::kClient;
  Method method = Method::kGet;
  std::string url;
  std::string host;
  HostOwner host_owner = HostOwner::kUnregistered;
  int status = 0;
  std::uint64_t request_bytes = 0;
  std::uint64_t response_bytes = 0;
  Headers request_headers;
  std::string request_body;

  // Path of the request Url, without query.
  std::string path() const;
  // True when `needle` occurs in the url, a request header value, or the body.
  bool request_contains(std::string_view needle) const;
  Json to_json() const;
};

class Transcript {
 public:
  const std::vector<TranscriptEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  std::uint64_t bytes_pulled_by(Principal p) const;
  std::uint64_t total_response_bytes() const;

  // One compact JSON object per line, fields in a fixed order.
  std::string to_jsonl() const;
  // Hex SHA-256 of to_jsonl().
  std::string digest() const;

 private:
  friend class Network;
  std::vector<TranscriptEvent> events_;
};

}  // namespace oidclab::simnet
