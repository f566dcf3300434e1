// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "core/model.hpp"
#include "simnet/http.hpp"
#include "simnet/transcript.hpp"

namespace oidclab::simnet {

inline constexpr std::size_t kDefaultChunk = 64 * 1024;
inline constexpr int kDefaultMaxRedirects = 10;

using Handler = std::function<HttpResponse(const HttpRequest&)>;

// How much of a response body the caller is willing to take. max_bytes == 0
// means everything.
struct PullPolicy {
  std::uint64_t max_bytes = 0;
  std::size_t chunk = kDefaultChunk;
};

// In-process routing of requests to host handlers. Not thread-safe: one
// instance belongs to one scenario run. Handlers may dispatch further
// requests re-entrantly.
class Network {
 public:
  explicit Network(EpochSeconds now = 0) : now_(now) {}
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  // Throws kDuplicateHost, or kInvalidArgument for a bad hostname. When
  // `reachable_from` is non-empty, requests from other principals get 502 as
  // if a firewall dropped them.
  void register_host(const std::string& host, HostOwner owner, Handler handler,
                     std::set<Principal> reachable_from = {});

  // Routes the request and appends exactly one transcript event. Never
  // throws for transport failures: an unknown or firewalled host yields 502.
  // Bytes pulled are counted even when the pull stops early.
  HttpResponse dispatch(const HttpRequest& request, const PullPolicy& pull = {});

  HostOwner owner_of(const std::string& host) const;
  const Transcript& transcript() const { return transcript_; }

  EpochSeconds now() const { return now_; }
  void set_now(EpochSeconds now) { now_ = now; }

 private:
  struct Route {
    HostOwner owner;
    Handler handler;
    std::set<Principal> reachable_from;
  };

  std::map<std::string, Route> routes_;
  Transcript transcript_;
  std::uint64_t next_seq_ = 1;
  EpochSeconds now_;
};

struct FetchPolicy {
  bool head_check = false;
  // 0 disables the cap.
  std::uint64_t byte_cap = 0;
  std::size_t chunk = kDefaultChunk;

  bool enabled() const { return head_check || byte_cap > 0; }
  // Throws kInvalidArgument for head_check without a cap or a zero chunk.
  void validate() const;
};

// GET with optional size defenses: a HEAD probe rejecting a declared length
// above the cap, and a hard stop once more than byte_cap body bytes arrive.
// At most byte_cap + 1 body bytes are ever pulled. Throws kPayloadTooLarge or
// kHostUnreachable; other statuses are returned to the caller.
HttpResponse guarded_fetch(Network& net, const Url& url, const FetchPolicy& policy,
                           Principal initiator, const Headers& headers = {});

}  // namespace oidclab::simnet
