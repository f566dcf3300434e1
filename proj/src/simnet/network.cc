// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "simnet/network.hpp"

#include <algorithm>

namespace oidclab::simnet {
namespace {

void set_header(Headers& headers, std::string_view name, std::string value) {
  for (auto& [k, v] : headers) {
    if (to_lower(k) == to_lower(name)) {
      v = std::move(value);
      return;
    }
  }
  headers.emplace_back(std::string(name), std::move(value));
}

// Pulls the response body into `out.body` under `pull`; returns bytes pulled.
std::uint64_t pull_body(HttpResponse& out, const PullPolicy& pull) {
  std::uint64_t available = out.stream ? out.stream->size() : out.body.size();
  std::uint64_t limit = pull.max_bytes == 0 ? available : std::min(available, pull.max_bytes);
  if (out.stream) {
    std::string body;
    std::uint64_t pulled = 0;
    std::size_t chunk = std::max<std::size_t>(pull.chunk, 1);
    while (pulled < limit) {
      auto n = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, limit - pulled));
      std::string piece = out.stream->read(pulled, n);
      if (piece.empty()) break;
      pulled += piece.size();
      body += piece;
    }
    out.body = std::move(body);
    out.stream.reset();
  } else if (limit < out.body.size()) {
    out.body.resize(static_cast<std::size_t>(limit));
  }
  out.truncated = limit < available;
  return out.body.size();
}

}  // namespace

void Network::register_host(const std::string& host, HostOwner owner, Handler handler,
                            std::set<Principal> reachable_from) {
  if (!is_valid_hostname(host)) fail(ErrorCode::kInvalidArgument, "bad hostname " + host);
  if (owner == HostOwner::kUnregistered) fail(ErrorCode::kInvalidArgument, "owner required");
  if (routes_.count(host)) fail(ErrorCode::kDuplicateHost, host);
  routes_.emplace(host, Route{owner, std::move(handler), std::move(reachable_from)});
}

HostOwner Network::owner_of(const std::string& host) const {
  auto it = routes_.find(host);
  return it == routes_.end() ? HostOwner::kUnregistered : it->second.owner;
}

HttpResponse Network::dispatch(const HttpRequest& request, const PullPolicy& pull) {
  HttpRequest req = request;
  if (req.method == Method::kHead) req.body.clear();
  // Fragments never leave the user-agent.
  req.url.fragment.clear();

  std::size_t index = transcript_.events_.size();
  {
    TranscriptEvent event;
    event.seq = next_seq_++;
    event.initiator = req.initiator;
    event.method = req.method;
    event.url = req.url.render();
    event.host = req.url.host;
    event.host_owner = owner_of(req.url.host);
    event.request_bytes = req.body.size();
    event.request_headers = req.headers;
    event.request_body = req.body;
    transcript_.events_.push_back(std::move(event));
  }

  HttpResponse response;
  auto it = routes_.find(req.url.host);
  bool reachable = it != routes_.end() &&
                   (it->second.reachable_from.empty() || it->second.reachable_from.count(req.initiator));
  if (!reachable) {
    response = HttpResponse::error(502, ErrorCode::kHostUnreachable, req.url.host);
  } else {
    // Copy: the handler may register nothing, but may dispatch re-entrantly.
    Handler handler = it->second.handler;
    response = handler(req);
  }

  std::uint64_t full = response.stream ? response.stream->size() : response.body.size();
  if (!response.content_length()) set_header(response.headers, "Content-Length", std::to_string(full));

  std::uint64_t pulled = 0;
  if (req.method == Method::kHead) {
    response.body.clear();
    response.stream.reset();
  } else {
    pulled = pull_body(response, pull);
  }

  TranscriptEvent& event = transcript_.events_[index];
  event.status = response.status;
  event.response_bytes = pulled;
  return response;
}

void FetchPolicy::validate() const {
  if (head_check && byte_cap == 0) fail(ErrorCode::kInvalidArgument, "head_check needs a byte cap");
  if (chunk == 0) fail(ErrorCode::kInvalidArgument, "chunk must be positive");
}

HttpResponse guarded_fetch(Network& net, const Url& url, const FetchPolicy& policy,
                           Principal initiator, const Headers& headers) {
  policy.validate();
  if (policy.head_check) {
    HttpRequest probe = HttpRequest::head(url, initiator);
    probe.headers = headers;
    HttpResponse head = net.dispatch(probe);
    if (head.status == 502) fail(ErrorCode::kHostUnreachable, url.host);
    auto declared = head.content_length();
    if (declared && *declared > policy.byte_cap) {
      fail(ErrorCode::kPayloadTooLarge, "declared " + std::to_string(*declared));
    }
  }
  PullPolicy pull;
  pull.chunk = policy.chunk;
  pull.max_bytes = policy.byte_cap == 0 ? 0 : policy.byte_cap + 1;
  HttpResponse response = net.dispatch(HttpRequest::get(url, initiator, headers), pull);
  if (response.status == 502) fail(ErrorCode::kHostUnreachable, url.host);
  if (policy.byte_cap > 0 && response.body.size() > policy.byte_cap) {
    fail(ErrorCode::kPayloadTooLarge, "more than " + std::to_string(policy.byte_cap) + " bytes");
  }
  return response;
}

}  // namespace oidclab::simnet
