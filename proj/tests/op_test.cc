// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "core/error.hpp"
#include "core/id_token.hpp"
#include "jose/jws.hpp"
#include "op/provider.hpp"
#include "simnet/network.hpp"

namespace oidclab::op {
namespace {

constexpr EpochSeconds kNow = 1700000000;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

class ProviderTest : public ::testing::Test {
 protected:
  ProviderTest() : net_(kNow), op_(default_op_config(42), 42) { op_.attach(net_); }

  ClientCredentials register_client(const std::string& method = "client_secret_post") {
    return op_.handle_registration(Json{{"client_uri", "http://client.com/"},
                                        {"redirect_uris", Json::array({"http://client.com/callback"})},
                                        {"token_endpoint_auth_method", method}});
  }

  Params auth_query(const ClientCredentials& c, const std::string& type = "code") {
    return {{"response_type", type},          {"scope", "openid"},  {"client_id", c.client_id},
            {"redirect_uri", "http://client.com/callback"}, {"state", "s1"}, {"nonce", "n1"}};
  }

  std::string issue_code(const ClientCredentials& c) {
    auto resp = op_.issue_authorization_response(auth_query(c), Identity{"alice", "honestop.com"});
    EXPECT_EQ(resp.status, 302);
    return *param(Url::parse(*resp.header("Location")).query, "code");
  }

  Params token_form(const ClientCredentials& c, const std::string& code) {
    return {{"grant_type", "authorization_code"}, {"code", code},
            {"redirect_uri", "http://client.com/callback"}, {"client_id", c.client_id},
            {"client_secret", c.client_secret}};
  }

  simnet::Network net_;
  OpenIdProvider op_;
};

TEST_F(ProviderTest, DefaultConfigIsValid) {
  EXPECT_NO_THROW(op_.config().validate());
  EXPECT_EQ(op_.metadata().authorization_endpoint.host, "login.honestop.com");
}

TEST_F(ProviderTest, ConfigRejectsForeignEndpoint) {
  OpConfig c = default_op_config(1);
  c.token_endpoint = Url::parse("https://malicious.com/token");
  EXPECT_THROW(c.validate(), Error);
}

TEST_F(ProviderTest, RegistrationIssuesDistinctCredentials) {
  auto a = register_client();
  auto b = register_client();
  EXPECT_NE(a.client_id, b.client_id);
  EXPECT_EQ(a.client_secret.size(), 32u);
  EXPECT_EQ(code_of([&] { op_.handle_registration(Json{{"redirect_uris", Json::array()}}); }),
            ErrorCode::kMalformedRegistration);
  EXPECT_EQ(code_of([&] {
              op_.handle_registration(Json{{"client_uri", "http://c.com/"}, {"token_endpoint_auth_method", "none"}});
            }),
            ErrorCode::kMalformedRegistration);
}

TEST_F(ProviderTest, CodeRedeemsOnceAndYieldsValidIdToken) {
  auto c = register_client();
  std::string code = issue_code(c);
  TokenResponse t = op_.handle_token(token_form(c, code));

  ValidationExpectations e;
  e.expected_issuer = op_.config().issuer;
  e.expected_client_id = c.client_id;
  e.expected_nonce = "n1";
  e.now = kNow;
  e.verification_key = op_.config().signing_key;
  EXPECT_EQ(validate_id_token(t.id_token, e).sub, "alice");
  EXPECT_EQ(op_.handle_userinfo(t.access_token)["email"], "alice@honestop.com");

  EXPECT_EQ(code_of([&] { op_.handle_token(token_form(c, code)); }), ErrorCode::kCodeReplayed);
  EXPECT_EQ(op_.grants().at(code).replay_attempts, 1);
}

TEST_F(ProviderTest, CodeIsBoundToClient) {
  auto a = register_client();
  auto b = register_client();
  std::string code = issue_code(a);
  EXPECT_EQ(code_of([&] { op_.handle_token(token_form(b, code)); }), ErrorCode::kUnknownCode);
}

TEST_F(ProviderTest, WrongSecretFailsBeforeCodeLookup) {
  auto c = register_client();
  Params form = token_form(c, "no-such-code");
  form.back().second = "wrong";
  EXPECT_EQ(code_of([&] { op_.handle_token(form); }), ErrorCode::kClientAuthFailed);
}

TEST_F(ProviderTest, RedirectUriMustStayUnderClientUri) {
  auto c = register_client();
  Params q = auth_query(c);
  q[3].second = "http://malicious.com/callback";
  EXPECT_EQ(code_of([&] { op_.check_authorization_request(q); }), ErrorCode::kInvalidRedirectUri);
}

TEST_F(ProviderTest, ImplicitResponseGoesInFragment) {
  auto c = register_client();
  auto resp = op_.issue_authorization_response(auth_query(c, "id_token token"), Identity{"alice", "honestop.com"});
  Url loc = Url::parse(*resp.header("Location"));
  EXPECT_TRUE(loc.query.empty());
  EXPECT_TRUE(param(loc.fragment, "access_token").has_value());
  EXPECT_TRUE(param(loc.fragment, "id_token").has_value());
  EXPECT_EQ(param(loc.fragment, "state"), "s1");
}

TEST_F(ProviderTest, AssertionAudienceMustBeTokenEndpoint) {
  auto c = register_client("client_secret_jwt");
  std::string code = issue_code(c);
  jose::Key key = jose::Key::symmetric("", c.client_secret);

  auto wrong = jose::build_client_assertion(c.client_id, Url::parse("http://malicious.com/"), key, kNow);
  Params form{{"grant_type", "authorization_code"}, {"code", code},
              {"client_assertion_type", "urn:ietf:params:oauth:client-assertion-type:jwt-bearer"},
              {"client_assertion", wrong.jwt}};
  EXPECT_EQ(code_of([&] { op_.handle_token(form); }), ErrorCode::kAudienceMismatch);

  auto right = jose::build_client_assertion(c.client_id, op_.config().token_endpoint, key, kNow);
  form.back().second = right.jwt;
  EXPECT_FALSE(op_.handle_token(form).id_token.empty());
}

TEST_F(ProviderTest, SecretPostRejectedForJwtClient) {
  auto c = register_client("client_secret_jwt");
  std::string code = issue_code(c);
  EXPECT_EQ(code_of([&] { op_.handle_token(token_form(c, code)); }), ErrorCode::kClientAuthFailed);
}

TEST_F(ProviderTest, IssuerInAuthResponseWhenEnabled) {
  OpConfig cfg = default_op_config(42);
  cfg.issue_issuer_in_auth_response = true;
  OpenIdProvider op(cfg, 42);
  simnet::Network net(kNow);
  op.attach(net);
  auto c = op.handle_registration(Json{{"client_uri", "http://client.com/"}});
  auto resp = op.issue_authorization_response(auth_query(c), Identity{"alice", "honestop.com"});
  EXPECT_EQ(param(Url::parse(*resp.header("Location")).query, "iss"), "https://honestop.com/");
}

TEST_F(ProviderTest, AuthenticateChecksPassword) {
  EXPECT_EQ(op_.authenticate("alice", "wonderland").local, "alice");
  EXPECT_EQ(code_of([&] { op_.authenticate("alice", "nope"); }), ErrorCode::kAuthenticationFailed);
}

TEST_F(ProviderTest, UserinfoRejectsUnknownToken) {
  EXPECT_EQ(code_of([&] { op_.handle_userinfo("bogus"); }), ErrorCode::kInvalidToken);
}

}  // namespace
}  // namespace oidclab::op
