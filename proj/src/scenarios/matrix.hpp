// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scenarios/world.hpp"

namespace oidclab::scenarios {

inline constexpr std::uint64_t kFetchCapBytes = 5 * adversary::kMiB;

struct DefenseConfig {
  std::string name;
  client::HardeningPolicy policy;
};

// none, whitelist, endpoint-restriction, csrf, client_secret_jwt,
// private_key_jwt, issuer-binding, fetch-cap, sanitize. Throws
// kInvalidArgument for anything else.
DefenseConfig named_defense(std::string_view name);
std::vector<std::string> all_defense_names();
// The six columns of the standard table.
std::vector<std::string> default_defense_names();
std::vector<adversary::AttackKind> all_attacks();

struct MatrixCell {
  std::string attack;
  std::string defense;
  ScenarioOutcome outcome;
};

struct MatrixResult {
  std::vector<std::string> attacks;
  std::vector<std::string> defenses;
  // Row-major: cells[i * defenses.size() + j].
  std::vector<MatrixCell> cells;

  const MatrixCell& at(std::size_t attack, std::size_t defense) const {
    return cells[attack * defenses.size() + defense];
  }
};

// Runs every attack against every defense. Cell (i, j) uses seed
// seed + i * |defenses| + j and the implicit flow for implicit token theft,
// the code flow otherwise; `base` supplies the remaining spec fields. Runs
// are spread over `workers` threads (0 picks the hardware concurrency) and
// the result does not depend on the worker count. Throws kInvalidArgument
// for empty lists.
MatrixResult attack_matrix(const std::vector<adversary::AttackKind>& attacks,
                           const std::vector<DefenseConfig>& defenses, std::uint64_t seed,
                           const ScenarioSpec& base = {}, unsigned workers = 0);

}  // namespace oidclab::scenarios
