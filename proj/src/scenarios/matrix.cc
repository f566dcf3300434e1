// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenarios/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace oidclab::scenarios {

using adversary::AttackKind;

DefenseConfig named_defense(std::string_view name) {
  DefenseConfig d{std::string(name), {}};
  client::HardeningPolicy& p = d.policy;
  if (name == "none") {
  } else if (name == "whitelist") {
    p.whitelist = std::vector<Url>{Url::parse("https://honestop.com")};
  } else if (name == "endpoint-restriction") {
    p.endpoint_restriction = true;
  } else if (name == "csrf") {
    p.csrf_protection = true;
  } else if (name == "client_secret_jwt") {
    p.client_auth_mode = client::ClientAuthMode::kClientSecretJwt;
  } else if (name == "private_key_jwt") {
    p.client_auth_mode = client::ClientAuthMode::kPrivateKeyJwt;
  } else if (name == "issuer-binding") {
    p.require_issuer_binding = true;
  } else if (name == "fetch-cap") {
    p.fetch_policy.head_check = true;
    p.fetch_policy.byte_cap = kFetchCapBytes;
  } else if (name == "sanitize") {
    p.sanitize_userinfo = true;
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown defense config " + std::string(name));
  }
  return d;
}

std::vector<std::string> all_defense_names() {
  return {"none",           "whitelist",      "endpoint-restriction", "csrf",    "client_secret_jwt",
          "private_key_jwt", "issuer-binding", "fetch-cap",            "sanitize"};
}

std::vector<std::string> default_defense_names() {
  return {"none", "whitelist", "endpoint-restriction", "csrf", "client_secret_jwt", "issuer-binding"};
}

std::vector<AttackKind> all_attacks() {
  return {AttackKind::kTokenTheftCode, AttackKind::kTokenTheftImplicit, AttackKind::kSsrf,
          AttackKind::kInjection, AttackKind::kDos};
}

MatrixResult attack_matrix(const std::vector<AttackKind>& attacks, const std::vector<DefenseConfig>& defenses,
                           std::uint64_t seed, const ScenarioSpec& base, unsigned workers) {
  if (attacks.empty() || defenses.empty()) fail(ErrorCode::kInvalidArgument, "empty attack or defense list");

  MatrixResult result;
  for (auto a : attacks) result.attacks.emplace_back(adversary::attack_name(a));
  for (const auto& d : defenses) result.defenses.push_back(d.name);

  std::vector<ScenarioSpec> specs;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    for (std::size_t j = 0; j < defenses.size(); ++j) {
      ScenarioSpec s = base;
      s.attack = attacks[i];
      s.defenses = defenses[j].policy;
      s.flow = attacks[i] == AttackKind::kTokenTheftImplicit ? client::Flow::kImplicit : client::Flow::kCode;
      s.seed = seed + i * defenses.size() + j;
      specs.push_back(std::move(s));
      result.cells.push_back({result.attacks[i], defenses[j].name, {}});
    }
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(specs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t k = next++; k < specs.size(); k = next++) {
      try {
        result.cells[k].outcome = run_scenario(specs[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace oidclab::scenarios
