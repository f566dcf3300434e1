// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace oidclab::jose {

// RFC 7515 base64url: URL-safe alphabet, no padding.
std::string base64url_encode(std::string_view bytes);

// Rejects '=' padding, characters outside the alphabet, impossible lengths
// (len % 4 == 1) and non-zero trailing bits, so every accepted input is the
// unique encoding of its output.
std::optional<std::string> base64url_decode(std::string_view text);

}  // namespace oidclab::jose
