// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "jose/jws.hpp"

namespace oidclab::jose {

using KeySet = std::map<std::string, Key>;

// {"keys":[{"kty","kid","alg","k"}]}. Symmetric keys use kty "oct"; public
// records of the simulated private-key scheme use kty "x-sim". Private keys
// are refused.
Json jwks_to_json(const std::vector<Key>& keys);

// Throws kMalformedMetadata on anything it does not understand.
KeySet parse_jwks(const Json& doc);

// Picks the key named by the token's kid, or the only key when the token
// carries no kid. Returns nullopt when nothing matches.
std::optional<Key> select_key(const KeySet& keys, std::string_view compact);

}  // namespace oidclab::jose
