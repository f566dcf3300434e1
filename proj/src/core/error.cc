// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

#include <array>
#include <utility>

namespace oidclab {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 34> kNames = {{
    {ErrorCode::kMalformedIdentity, "MalformedIdentity"},
    {ErrorCode::kMalformedUrl, "MalformedUrl"},
    {ErrorCode::kMalformedToken, "MalformedToken"},
    {ErrorCode::kBadSignature, "BadSignature"},
    {ErrorCode::kUnsupportedAlgorithm, "UnsupportedAlgorithm"},
    {ErrorCode::kInvalidKey, "InvalidKey"},
    {ErrorCode::kIssuerMismatch, "IssuerMismatch"},
    {ErrorCode::kAudienceMismatch, "AudienceMismatch"},
    {ErrorCode::kExpired, "Expired"},
    {ErrorCode::kNotYetValid, "NotYetValid"},
    {ErrorCode::kNonceMismatch, "NonceMismatch"},
    {ErrorCode::kDuplicateHost, "DuplicateHost"},
    {ErrorCode::kHostUnreachable, "HostUnreachable"},
    {ErrorCode::kPayloadTooLarge, "PayloadTooLarge"},
    {ErrorCode::kTooManyRedirects, "TooManyRedirects"},
    {ErrorCode::kMalformedRegistration, "MalformedRegistration"},
    {ErrorCode::kUnknownClient, "UnknownClient"},
    {ErrorCode::kAuthenticationFailed, "AuthenticationFailed"},
    {ErrorCode::kInvalidRedirectUri, "InvalidRedirectUri"},
    {ErrorCode::kUnknownCode, "UnknownCode"},
    {ErrorCode::kCodeReplayed, "CodeReplayed"},
    {ErrorCode::kClientAuthFailed, "ClientAuthFailed"},
    {ErrorCode::kInvalidToken, "InvalidToken"},
    {ErrorCode::kWhitelistRejected, "WhitelistRejected"},
    {ErrorCode::kEndpointRestrictionViolated, "EndpointRestrictionViolated"},
    {ErrorCode::kMalformedMetadata, "MalformedMetadata"},
    {ErrorCode::kRegistrationFailed, "RegistrationFailed"},
    {ErrorCode::kCsrfRejected, "CsrfRejected"},
    {ErrorCode::kStateMismatch, "StateMismatch"},
    {ErrorCode::kIssuerBindingMismatch, "IssuerBindingMismatch"},
    {ErrorCode::kTokenRequestFailed, "TokenRequestFailed"},
    {ErrorCode::kUserinfoFailed, "UserinfoFailed"},
    {ErrorCode::kInvalidArgument, "InvalidArgument"},
    {ErrorCode::kScenarioPanic, "ScenarioPanic"},
}};

}  // namespace

std::string_view error_name(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> error_from_name(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(error_name(code))
                                        : std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace oidclab
