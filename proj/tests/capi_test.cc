// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "oidclab/oidclab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  oidclab_string_free(s);
  return out;
}

struct Scenario {
  Scenario() { EXPECT_EQ(oidclab_scenario_new(&s), OIDCLAB_OK); }
  ~Scenario() { oidclab_scenario_free(s); }
  oidclab_scenario* s = nullptr;
};

struct Outcome {
  explicit Outcome(const oidclab_scenario* s) { status = oidclab_run(s, &o); }
  ~Outcome() { oidclab_outcome_free(o); }
  std::string label() const {
    char* out = nullptr;
    EXPECT_EQ(oidclab_outcome_label(o, &out), OIDCLAB_OK);
    return take(out);
  }
  std::string report() const {
    char* out = nullptr;
    EXPECT_EQ(oidclab_outcome_report(o, OIDCLAB_FORMAT_JSON, &out), OIDCLAB_OK);
    return take(out);
  }
  oidclab_status status;
  oidclab_outcome* o = nullptr;
};

TEST(CApiTest, HonestBaseline) {
  Scenario sc;
  Outcome out(sc.s);
  ASSERT_EQ(out.status, OIDCLAB_OK);
  EXPECT_EQ(oidclab_outcome_verdict(out.o), OIDCLAB_VERDICT_COMPLETED_HONEST);
  EXPECT_EQ(out.label(), "COMPLETED_HONEST");
  EXPECT_GT(oidclab_outcome_bytes_pulled_by_client(out.o), 0u);
}

TEST(CApiTest, AttackAndDefense) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_attack(sc.s, "token-theft-code"), OIDCLAB_OK);
  {
    Outcome out(sc.s);
    EXPECT_EQ(oidclab_outcome_verdict(out.o), OIDCLAB_VERDICT_COMPROMISED);
  }
  ASSERT_EQ(oidclab_scenario_set_flag(sc.s, "require_issuer_binding", 1), OIDCLAB_OK);
  Outcome out(sc.s);
  EXPECT_EQ(out.label(), "BLOCKED(IssuerBindingMismatch@2.3)");
}

TEST(CApiTest, WhitelistSetAndClear) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_attack(sc.s, "ssrf"), OIDCLAB_OK);
  ASSERT_EQ(oidclab_scenario_set_whitelist(sc.s, "https://honestop.com"), OIDCLAB_OK);
  {
    Outcome out(sc.s);
    EXPECT_EQ(out.label(), "BLOCKED(WhitelistRejected@1.1.2)");
  }
  ASSERT_EQ(oidclab_scenario_set_whitelist(sc.s, nullptr), OIDCLAB_OK);
  Outcome out(sc.s);
  EXPECT_EQ(oidclab_outcome_verdict(out.o), OIDCLAB_VERDICT_COMPROMISED);
}

TEST(CApiTest, JsonRoundTrip) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_attack(sc.s, "dos"), OIDCLAB_OK);
  ASSERT_EQ(oidclab_scenario_set_byte_cap(sc.s, 5u << 20), OIDCLAB_OK);
  char* json = nullptr;
  ASSERT_EQ(oidclab_scenario_to_json(sc.s, &json), OIDCLAB_OK);
  std::string text = take(json);
  oidclab_scenario* copy = nullptr;
  ASSERT_EQ(oidclab_scenario_from_json(text.c_str(), &copy), OIDCLAB_OK);
  char* again = nullptr;
  ASSERT_EQ(oidclab_scenario_to_json(copy, &again), OIDCLAB_OK);
  EXPECT_EQ(take(again), text);
  oidclab_scenario_free(copy);
}

TEST(CApiTest, ErrorsAreReported) {
  Scenario sc;
  EXPECT_EQ(oidclab_scenario_set_attack(sc.s, "meteor"), OIDCLAB_E_INVALID_ARGUMENT);
  EXPECT_NE(std::string(oidclab_last_error()).find("meteor"), std::string::npos);
  EXPECT_EQ(oidclab_scenario_set_flag(sc.s, "moat", 1), OIDCLAB_E_INVALID_ARGUMENT);
  EXPECT_EQ(oidclab_scenario_set_adversary_domain(sc.s, "no spaces.com"), OIDCLAB_E_INVALID_ARGUMENT);
  EXPECT_EQ(oidclab_scenario_set_attack(nullptr, "dos"), OIDCLAB_E_NULL_ARGUMENT);
  oidclab_scenario* bad = nullptr;
  EXPECT_EQ(oidclab_scenario_from_json("{not json", &bad), OIDCLAB_E_PARSE);
  EXPECT_EQ(bad, nullptr);
  EXPECT_STREQ(oidclab_status_name(OIDCLAB_E_PARSE), "PARSE");
}

TEST(CApiTest, HeadCheckWithoutCapRejectedAtRun) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_flag(sc.s, "head_check", 1), OIDCLAB_OK);
  Outcome out(sc.s);
  EXPECT_EQ(out.status, OIDCLAB_E_INVALID_ARGUMENT);
}

TEST(CApiTest, CollidingAdversaryIsPanic) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_attack(sc.s, "injection"), OIDCLAB_OK);
  ASSERT_EQ(oidclab_scenario_set_adversary_domain(sc.s, "client.com"), OIDCLAB_OK);
  Outcome out(sc.s);
  EXPECT_EQ(out.status, OIDCLAB_E_SCENARIO_PANIC);
}

TEST(CApiTest, ReportIsDeterministic) {
  Scenario sc;
  ASSERT_EQ(oidclab_scenario_set_attack(sc.s, "token-theft-implicit"), OIDCLAB_OK);
  ASSERT_EQ(oidclab_scenario_set_flow(sc.s, "implicit"), OIDCLAB_OK);
  Outcome a(sc.s);
  Outcome b(sc.s);
  EXPECT_EQ(a.report(), b.report());
  char* ja = nullptr;
  char* jb = nullptr;
  ASSERT_EQ(oidclab_outcome_transcript_jsonl(a.o, &ja), OIDCLAB_OK);
  ASSERT_EQ(oidclab_outcome_transcript_jsonl(b.o, &jb), OIDCLAB_OK);
  EXPECT_EQ(take(ja), take(jb));
}

TEST(CApiTest, MatrixDefaults) {
  oidclab_matrix* m = nullptr;
  ASSERT_EQ(oidclab_matrix_run(nullptr, 0, nullptr, 0, 42, nullptr, 2, &m), OIDCLAB_OK);
  char* text = nullptr;
  ASSERT_EQ(oidclab_matrix_report(m, OIDCLAB_FORMAT_TEXT, &text), OIDCLAB_OK);
  std::string table = take(text);
  EXPECT_NE(table.find("BLOCKED(AudienceMismatch@3.1)"), std::string::npos);
  EXPECT_NE(table.find("issuer-binding"), std::string::npos);
  oidclab_matrix_free(m);
}

TEST(CApiTest, MatrixRejectsUnknownDefense) {
  const char* defenses[] = {"none", "moat"};
  oidclab_matrix* m = nullptr;
  EXPECT_EQ(oidclab_matrix_run(nullptr, 0, defenses, 2, 42, nullptr, 1, &m), OIDCLAB_E_INVALID_ARGUMENT);
  EXPECT_EQ(m, nullptr);
}

}  // namespace
