// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "adversary/adversary.hpp"
#include "client/relying_client.hpp"
#include "scenarios/spec.hpp"
#include "simnet/transcript.hpp"

namespace oidclab::scenarios {

enum class Verdict { kCompromised, kBlocked, kCompletedHonest };

std::string_view verdict_name(Verdict v);

// Hosts every run places on the network besides the OP and the adversary.
inline constexpr const char* kClientBase = "http://client.com/";
inline constexpr const char* kIntranetHost = "intranet.client.local";

struct ScenarioOutcome {
  ScenarioSpec spec;
  Verdict verdict = Verdict::kBlocked;
  // Set for BLOCKED, and for any run whose login ended in an abort.
  std::string abort_reason;
  std::string abort_step;
  std::string abort_detail;

  adversary::CaptureStore captures;
  std::vector<adversary::Redemption> redeemed;
  std::vector<adversary::ReplayAttempt> replay_attempts;

  std::uint64_t bytes_pulled_by_client = 0;
  bool injected_payload_stored = false;
  std::vector<Url> ssrf_targets_hit;

  // The client's view of the last login.
  client::LoginRecord login;
  std::vector<client::StoredProfile> profiles;
  std::size_t registration_requests = 0;

  simnet::Transcript transcript;
  std::string transcript_digest;

  // COMPROMISED, BLOCKED(reason@step) or COMPLETED_HONEST.
  std::string label() const;
};

// Builds a fresh network with the honest OP, the client under
// spec.defenses, the adversary (unless the spec is the honest baseline), an
// intranet host for SSRF targets, and the End-User's browser, then plays the
// scenario and classifies it. Throws kScenarioPanic only when the harness
// itself is misconfigured.
ScenarioOutcome run_scenario(const ScenarioSpec& spec);

}  // namespace oidclab::scenarios
