// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/id_token.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace oidclab {
namespace {

const Json& member(const Json& j, const char* name) {
  if (!j.contains(name)) fail(ErrorCode::kMalformedToken, std::string("missing claim ") + name);
  return j[name];
}

std::string string_claim(const Json& j, const char* name) {
  const Json& v = member(j, name);
  if (!v.is_string()) fail(ErrorCode::kMalformedToken, std::string(name) + " is not a string");
  return v.get<std::string>();
}

EpochSeconds time_claim(const Json& j, const char* name) {
  const Json& v = member(j, name);
  if (!v.is_number_integer()) fail(ErrorCode::kMalformedToken, std::string(name) + " is not an integer");
  return v.get<EpochSeconds>();
}

std::vector<std::string> audience_claim(const Json& j) {
  const Json& v = member(j, "aud");
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& entry : v) {
      if (!entry.is_string()) fail(ErrorCode::kMalformedToken, "aud entry is not a string");
      out.push_back(entry.get<std::string>());
    }
  } else {
    fail(ErrorCode::kMalformedToken, "aud is neither string nor list");
  }
  return out;
}

}  // namespace

Json IdTokenClaims::to_json() const {
  Json audience = Json::array();
  for (const auto& a : aud) audience.push_back(a);
  return Json{
      {"iss", iss.render()}, {"sub", sub},     {"exp", exp},
      {"iat", iat},          {"nonce", nonce}, {"aud", std::move(audience)},
  };
}

IdTokenClaims IdTokenClaims::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kMalformedToken, "claims are not an object");
  auto iss = Url::try_parse(string_claim(j, "iss"));
  if (!iss) fail(ErrorCode::kMalformedToken, "iss is not a url");
  IdTokenClaims out;
  out.iss = *iss;
  out.sub = string_claim(j, "sub");
  out.exp = time_claim(j, "exp");
  out.iat = time_claim(j, "iat");
  out.nonce = string_claim(j, "nonce");
  out.aud = audience_claim(j);
  return out;
}

IdTokenClaims validate_id_token(std::string_view compact, const ValidationExpectations& expect) {
  if (expect.clock_skew < 0) fail(ErrorCode::kInvalidArgument, "negative clock skew");

  Json raw = jose::jws_verify(compact, expect.verification_key);
  if (!raw.is_object()) fail(ErrorCode::kMalformedToken, "claims are not an object");

  // Structure first so every check below sees well-typed values; an iss that
  // is not even a Url cannot be the expected issuer.
  const std::string iss_text = string_claim(raw, "iss");
  std::string sub = string_claim(raw, "sub");
  EpochSeconds exp = time_claim(raw, "exp");
  EpochSeconds iat = time_claim(raw, "iat");
  std::string nonce = string_claim(raw, "nonce");
  std::vector<std::string> aud = audience_claim(raw);

  auto iss = Url::try_parse(iss_text);
  if (!iss || !(*iss == expect.expected_issuer)) {
    fail(ErrorCode::kIssuerMismatch, iss_text + " != " + expect.expected_issuer.render());
  }
  if (std::find(aud.begin(), aud.end(), expect.expected_client_id) == aud.end()) {
    fail(ErrorCode::kAudienceMismatch, expect.expected_client_id);
  }
  if (expect.now > exp + expect.clock_skew) fail(ErrorCode::kExpired);
  if (expect.now < iat - expect.clock_skew) fail(ErrorCode::kNotYetValid);
  if (nonce != expect.expected_nonce) fail(ErrorCode::kNonceMismatch);

  return IdTokenClaims{*iss, std::move(sub), exp, iat, std::move(nonce), std::move(aud)};
}

}  // namespace oidclab
