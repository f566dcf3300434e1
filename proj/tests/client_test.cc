// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "client/policy.hpp"
#include "client/relying_client.hpp"
#include "core/error.hpp"
#include "op/provider.hpp"
#include "simnet/user_agent.hpp"

namespace oidclab::client {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(PolicyTest, JsonRoundTrip) {
  HardeningPolicy p;
  p.whitelist = std::vector<Url>{Url::parse("https://honestop.com/")};
  p.endpoint_restriction = true;
  p.fetch_policy.head_check = true;
  p.fetch_policy.byte_cap = 5 * 1024 * 1024;
  p.csrf_protection = true;
  p.client_auth_mode = ClientAuthMode::kPrivateKeyJwt;
  p.require_issuer_binding = true;
  p.sanitize_userinfo = true;
  EXPECT_EQ(HardeningPolicy::from_json(p.to_json()), p);
  EXPECT_EQ(HardeningPolicy::from_json(HardeningPolicy{}.to_json()), HardeningPolicy{});
}

TEST(PolicyTest, FromJsonIsStrict) {
  Json j = HardeningPolicy{}.to_json();
  j["surprise"] = true;
  EXPECT_THROW(HardeningPolicy::from_json(j), Error);
  Json k = HardeningPolicy{}.to_json();
  k["client_auth_mode"] = "basic";
  EXPECT_THROW(HardeningPolicy::from_json(k), Error);
}

TEST(PolicyTest, WhitelistMatchesByOrigin) {
  HardeningPolicy p;
  EXPECT_TRUE(p.whitelisted(Url::parse("http://malicious.com/")));
  p.whitelist = std::vector<Url>{Url::parse("https://honestop.com")};
  EXPECT_TRUE(p.whitelisted(Url::parse("https://honestop.com/anything")));
  EXPECT_FALSE(p.whitelisted(Url::parse("http://honestop.com/")));
  EXPECT_FALSE(p.whitelisted(Url::parse("https://evil.honestop.com/")));
  p.whitelist = std::vector<Url>{};
  EXPECT_FALSE(p.whitelisted(Url::parse("https://honestop.com/")));
}

TEST(PolicyTest, SameSiteIsRegistrableDomain) {
  EXPECT_TRUE(same_site(Url::parse("https://honestop.com/token"), Url::parse("https://login.honestop.com/")));
  EXPECT_TRUE(same_site(Url::parse("http://evil.honestop.com/"), Url::parse("https://login.honestop.com/")));
  EXPECT_FALSE(same_site(Url::parse("http://malicious.com/"), Url::parse("https://login.honestop.com/")));
}

TEST(PolicyTest, HtmlEscape) {
  EXPECT_EQ(html_escape("<script>alert(1)</script>"), "&lt;script&gt;alert(1)&lt;/script&gt;");
  EXPECT_EQ(html_escape("a&\"'b"), "a&amp;&quot;&#39;b");
  EXPECT_EQ(html_escape("plain"), "plain");
}

TEST(PolicyTest, AuthModeNames) {
  for (auto m : {ClientAuthMode::kSecretPost, ClientAuthMode::kClientSecretJwt, ClientAuthMode::kPrivateKeyJwt}) {
    EXPECT_EQ(auth_mode_from_name(auth_mode_name(m)), m);
  }
  EXPECT_EQ(registration_auth_method(ClientAuthMode::kSecretPost), "client_secret_post");
  EXPECT_THROW(auth_mode_from_name("basic"), Error);
}

// A client and the honest OP wired together without any adversary.
class HonestWorldTest : public ::testing::Test {
 protected:
  HonestWorldTest() : net_(1700000000), op_(op::default_op_config(42), 42) {}

  RelyingClient& start(HardeningPolicy policy = {}, Flow flow = Flow::kCode) {
    op_.attach(net_);
    rp_.emplace(ClientConfig{Url::parse("http://client.com/"), flow, std::move(policy)}, 42);
    rp_->attach(net_);
    return *rp_;
  }

  simnet::Network net_;
  op::OpenIdProvider op_;
  std::optional<RelyingClient> rp_;
};

TEST_F(HonestWorldTest, DiscoveryFollowsWebFingerToMetadata) {
  RelyingClient& rp = start();
  ProviderMetadata md = rp.discover(Identity{"alice", "honestop.com"});
  EXPECT_EQ(md, op_.metadata());
}

TEST_F(HonestWorldTest, RegistrationIsCachedPerIssuer) {
  RelyingClient& rp = start();
  ProviderMetadata md = rp.discover(Identity{"alice", "honestop.com"});
  auto a = rp.ensure_registration(md);
  auto b = rp.ensure_registration(md);
  EXPECT_EQ(a, b);
  EXPECT_EQ(rp.registration_requests(), 1u);
  EXPECT_EQ(op_.clients().size(), 1u);
}

TEST_F(HonestWorldTest, WhitelistRejectsUnknownIssuer) {
  HardeningPolicy p;
  p.whitelist = std::vector<Url>{Url::parse("https://other.com")};
  RelyingClient& rp = start(p);
  EXPECT_EQ(code_of([&] { rp.discover(Identity{"alice", "honestop.com"}); }), ErrorCode::kWhitelistRejected);
}

TEST_F(HonestWorldTest, CodeFlowEndToEnd) {
  start();
  simnet::UserAgent ua(net_);
  ua.remember_login("login.honestop.com", {"alice", "wonderland"});
  ua.navigate(Url::parse("http://client.com/"));
  ua.navigate(Url::parse("http://client.com/login?identity=alice%40honestop.com"));
  ASSERT_EQ(rp_->logins().size(), 1u);
  const LoginRecord& rec = rp_->logins()[0];
  EXPECT_EQ(rec.status, LoginRecord::Status::kLoggedIn) << rec.detail;
  EXPECT_EQ(rec.subject, "alice");
  EXPECT_EQ(rec.issuer, "https://honestop.com/");
  ASSERT_EQ(rp_->profiles().size(), 1u);
  EXPECT_EQ(rp_->profiles()[0].email, "alice@honestop.com");
}

TEST_F(HonestWorldTest, ImplicitFlowEndToEnd) {
  start({}, Flow::kImplicit);
  simnet::UserAgent ua(net_);
  ua.remember_login("login.honestop.com", {"alice", "wonderland"});
  ua.navigate(Url::parse("http://client.com/"));
  ua.navigate(Url::parse("http://client.com/login?identity=alice%40honestop.com"));
  ASSERT_EQ(rp_->logins().size(), 1u);
  EXPECT_EQ(rp_->logins()[0].status, LoginRecord::Status::kLoggedIn) << rp_->logins()[0].detail;
}

TEST_F(HonestWorldTest, CsrfBlocksForgedInitiation) {
  HardeningPolicy p;
  p.csrf_protection = true;
  start(p);
  simnet::UserAgent ua(net_);
  ua.navigate(Url::parse("http://client.com/"));
  ua.navigate(Url::parse("http://client.com/login?identity=alice%40honestop.com"));
  ASSERT_EQ(rp_->logins().size(), 1u);
  EXPECT_EQ(rp_->logins()[0].error, ErrorCode::kCsrfRejected);
  EXPECT_EQ(rp_->logins()[0].step, "1.0");
}

TEST_F(HonestWorldTest, CsrfTokenAllowsGenuineLogin) {
  HardeningPolicy p;
  p.csrf_protection = true;
  start(p);
  simnet::UserAgent ua(net_);
  ua.remember_login("login.honestop.com", {"alice", "wonderland"});
  ua.navigate(Url::parse("http://client.com/"));
  auto token = ua.csrf_token("client.com");
  ASSERT_TRUE(token.has_value());
  Url login = Url::parse("http://client.com/login").with_query({{"identity", "alice@honestop.com"}, {"csrf", *token}});
  ua.navigate(login);
  ASSERT_EQ(rp_->logins().size(), 1u);
  EXPECT_EQ(rp_->logins()[0].status, LoginRecord::Status::kLoggedIn) << rp_->logins()[0].detail;
}

}  // namespace
}  // namespace oidclab::client
