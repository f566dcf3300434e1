// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace oidclab {

// Counter-based generator for opaque protocol values (client ids, secrets,
// codes, state, nonce). Output i of stream s under seed k is a pure function
// of (k, s, i), so principals drawing from separate streams never perturb
// each other's values.
class TokenSource {
 public:
  TokenSource(std::uint64_t seed, std::string_view stream);

  // 32 lowercase hex characters.
  std::string next_hex32();
  std::uint64_t next_u64();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace oidclab
