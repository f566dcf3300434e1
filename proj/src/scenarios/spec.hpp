// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adversary/adversary.hpp"
#include "client/policy.hpp"
#include "client/relying_client.hpp"
#include "core/identity.hpp"

namespace oidclab::scenarios {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::uint64_t kDefaultDosThreshold = 10 * adversary::kMiB;
inline constexpr EpochSeconds kDefaultStartTime = 1700000000;

// Everything a run depends on. Two equal specs give byte-identical runs.
struct ScenarioSpec {
  // Unset: the honest baseline with no adversary on the network.
  std::optional<adversary::AttackKind> attack;
  client::HardeningPolicy defenses;
  client::Flow flow = client::Flow::kCode;
  std::uint64_t seed = kDefaultSeed;
  Identity victim{"alice", "honestop.com"};

  std::string adversary_domain = "malicious.com";
  std::vector<Url> ssrf_targets;
  std::uint64_t payload_size = adversary::kDefaultPayloadSize;
  bool lying_head = false;
  // Replaces the default injected userinfo document when set.
  std::optional<Json> injected_claims;

  std::uint64_t dos_threshold = kDefaultDosThreshold;
  EpochSeconds start_time = kDefaultStartTime;

  // Token theft abuses the victim's browser through a forged login request;
  // the other attacks are started by the attacker from his own browser.
  bool forged_initiation() const;

  Json to_json() const;
  // Unknown members are rejected. Throws kInvalidArgument.
  static ScenarioSpec from_json(const Json& j);

  friend bool operator==(const ScenarioSpec& a, const ScenarioSpec& b) {
    return a.to_json() == b.to_json();
  }
};

// "none" or an attack name.
std::string attack_label(const std::optional<adversary::AttackKind>& attack);
std::optional<adversary::AttackKind> attack_from_label(std::string_view label);

}  // namespace oidclab::scenarios
