// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "core/token_source.hpp"
#include "jose/jws.hpp"
#include "simnet/network.hpp"

namespace oidclab::adversary {

enum class AttackKind { kTokenTheftCode, kTokenTheftImplicit, kSsrf, kInjection, kDos };

// Kebab-case names used on the command line and in reports.
std::string_view attack_name(AttackKind kind);
// Throws kInvalidArgument.
AttackKind attack_from_name(std::string_view name);

inline constexpr std::uint64_t kMiB = 1024 * 1024;
inline constexpr std::uint64_t kDefaultPayloadSize = 50 * kMiB;
inline constexpr std::uint64_t kLyingContentLength = 1024;

// The stored-XSS userinfo document from the injection attack.
Json default_injected_claims();

struct AttackProfile {
  AttackKind kind = AttackKind::kTokenTheftCode;
  // Host the Malicious Discovery Service runs on; its issuer is http://<domain>.
  std::string domain = "malicious.com";
  ProviderMetadata metadata_template;
  std::vector<Url> ssrf_targets;
  std::uint64_t payload_size = kDefaultPayloadSize;
  bool lying_head = false;
  Json injected_claims;
  // Where stolen material is tried out.
  Url honest_token_endpoint;
  Url honest_userinfo_endpoint;

  Url issuer() const;

  // Builds the metadata mix for `kind`. `honest` supplies the endpoints the
  // token-theft mix borrows from the real OP.
  static AttackProfile make(AttackKind kind, const ProviderMetadata& honest,
                            std::string domain = "malicious.com",
                            std::vector<Url> ssrf_targets = {});
};

// Everything the adversary received from other parties. Values it minted
// itself (its own codes, tokens, client registrations) are not captures.
struct CaptureStore {
  std::vector<std::string> codes;
  std::vector<ClientCredentials> client_credentials;
  std::vector<std::string> access_tokens;
  std::vector<std::string> assertions;
  std::vector<Url> ssrf_hits;

  bool empty() const;
  Json to_json() const;
};

// Stolen material put to use at the honest OP.
struct Redemption {
  std::string via;  // "token" or "userinfo"
  std::string code;
  std::string access_token;
  std::string id_token;
  std::string subject;
  std::string nonce;

  Json to_json() const;
};

// A captured client assertion replayed at the honest token endpoint.
struct ReplayAttempt {
  std::string assertion;
  int status = 0;
  std::string error;

  Json to_json() const;
};

class Adversary {
 public:
  Adversary(AttackProfile profile, std::uint64_t seed);

  void attach(simnet::Network& net);
  simnet::HttpResponse handle(const simnet::HttpRequest& request);

  ProviderMetadata serve_malicious_metadata() const { return profile_.metadata_template; }
  simnet::HttpResponse capture_token_request(const simnet::HttpRequest& request);
  simnet::HttpResponse capture_userinfo_request(const simnet::HttpRequest& request);
  simnet::HttpResponse serve_large_payload(const simnet::HttpRequest& request) const;
  std::string issue_forged_id_token(const std::string& victim_sub, const std::string& client_id,
                                    const std::string& nonce);

  // Called by the intranet host when a request reaches an SSRF target.
  void record_ssrf_hit(const Url& url) { captures_.ssrf_hits.push_back(url); }

  const AttackProfile& profile() const { return profile_; }
  const CaptureStore& captures() const { return captures_; }
  const std::vector<Redemption>& redemptions() const { return redemptions_; }
  const std::vector<ReplayAttempt>& replays() const { return replays_; }
  const jose::Key& signing_key() const { return key_; }

 private:
  simnet::HttpResponse authorize(const simnet::HttpRequest& request);
  simnet::HttpResponse jwks() const;
  simnet::HttpResponse forward(const Url& endpoint, const Params& form);
  std::string mint();
  std::string subject_for_forgery() const;

  AttackProfile profile_;
  TokenSource tokens_;
  jose::Key key_;
  simnet::Network* net_ = nullptr;
  CaptureStore captures_;
  std::vector<Redemption> redemptions_;
  std::vector<ReplayAttempt> replays_;
  std::set<std::string> minted_;
  // Nonce per code issued by the adversary's own authorization endpoint.
  std::map<std::string, std::string> nonces_;
  // Subject learned per self-issued access token.
  std::map<std::string, std::string> subjects_;
  std::string learned_sub_;
  std::string learned_nonce_;
};

}  // namespace oidclab::adversary
