// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace oidclab::jose {

// Raw 32-byte digests.
std::string sha256(std::string_view data);
std::string hmac_sha256(std::string_view key, std::string_view data);

std::string to_hex(std::string_view bytes);

// Timing does not depend on where a and b differ.
bool constant_time_equal(std::string_view a, std::string_view b);

}  // namespace oidclab::jose
