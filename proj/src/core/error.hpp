// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oidclab {

// Every failure the lab can report. The names are part of the report and
// wire formats (see error_name), so append only.
enum class ErrorCode {
  kMalformedIdentity,
  kMalformedUrl,
  kMalformedToken,
  kBadSignature,
  kUnsupportedAlgorithm,
  kInvalidKey,
  kIssuerMismatch,
  kAudienceMismatch,
  kExpired,
  kNotYetValid,
  kNonceMismatch,
  kDuplicateHost,
  kHostUnreachable,
  kPayloadTooLarge,
  kTooManyRedirects,
  kMalformedRegistration,
  kUnknownClient,
  kAuthenticationFailed,
  kInvalidRedirectUri,
  kUnknownCode,
  kCodeReplayed,
  kClientAuthFailed,
  kInvalidToken,
  kWhitelistRejected,
  kEndpointRestrictionViolated,
  kMalformedMetadata,
  kRegistrationFailed,
  kCsrfRejected,
  kStateMismatch,
  kIssuerBindingMismatch,
  kTokenRequestFailed,
  kUserinfoFailed,
  kInvalidArgument,
  kScenarioPanic,
};

std::string_view error_name(ErrorCode code);
std::optional<ErrorCode> error_from_name(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

}  // namespace oidclab
