// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/id_token.hpp"
#include "jose/base64url.hpp"
#include "jose/crypto.hpp"
#include "jose/jws.hpp"
#include "op/provider.hpp"
#include "scenarios/matrix.hpp"
#include "scenarios/report.hpp"
#include "scenarios/world.hpp"

namespace {

using namespace oidclab;
using adversary::AttackKind;
using adversary::kMiB;
using scenarios::ScenarioOutcome;
using scenarios::ScenarioSpec;
using scenarios::Verdict;

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }
};

ScenarioSpec attack(AttackKind kind, client::HardeningPolicy defenses = {}) {
  ScenarioSpec s;
  s.attack = kind;
  s.defenses = std::move(defenses);
  if (kind == AttackKind::kTokenTheftImplicit) s.flow = client::Flow::kImplicit;
  return s;
}

std::string fixture(const std::string& name) { return std::string(OIDCLAB_FIXTURE_DIR) + "/" + name; }

std::vector<std::vector<std::string>> read_tsv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

void honest_baseline(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  ScenarioOutcome o = scenarios::run_scenario(ScenarioSpec{});
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  c.expect(o.verdict == Verdict::kCompletedHonest, "verdict " + o.label());
  c.expect(ms < 1000, "took " + std::to_string(ms) + " ms");
  std::string client_id, nonce;
  for (const auto& e : o.transcript.events()) {
    Url u = Url::parse(e.url);
    if (u.host == "login.honestop.com" && param(u.query, "nonce")) nonce = *param(u.query, "nonce");
    if (e.url == "https://honestop.com/token") client_id = param(decode_params(e.request_body), "client_id").value_or("");
  }
  op::OpConfig op = op::default_op_config(o.spec.seed);
  ValidationExpectations ex{op.issuer, client_id, nonce, o.spec.start_time, kDefaultClockSkew, op.signing_key};
  try {
    validate_id_token(o.login.id_token, ex);
  } catch (const Error& e) {
    c.expect(false, std::string("id_token rejected: ") + e.what());
  }
}

void code_theft(Check& c) {
  ScenarioOutcome o = scenarios::run_scenario(attack(AttackKind::kTokenTheftCode));
  c.expect(o.verdict == Verdict::kCompromised, "verdict " + o.label());
  c.expect(o.captures.codes.size() == 1, "codes captured");
  c.expect(o.captures.client_credentials.size() == 1 && !o.captures.client_credentials[0].client_id.empty() &&
               !o.captures.client_credentials[0].client_secret.empty(),
           "client_id and client_secret captured");
  c.expect(o.captures.access_tokens.empty() && o.captures.assertions.empty() && o.captures.ssrf_hits.empty(),
           "nothing else captured");
  // Every capture arrived on an adversary host.
  for (const auto& code : o.captures.codes) {
    bool seen = false;
    for (const auto& e : o.transcript.events()) {
      seen |= e.host_owner == simnet::HostOwner::kAdversary && e.request_contains(code);
    }
    c.expect(seen, "code not observed on adversary host");
  }
  // Victim-indistinguishability: the user-agent never talks to the adversary.
  for (const auto& e : o.transcript.events()) {
    if (e.initiator == simnet::Principal::kUserAgent) {
      c.expect(e.host_owner == simnet::HostOwner::kHonest, "user-agent reached " + e.url);
    }
  }
}

void implicit_theft(Check& c) {
  ScenarioOutcome o = scenarios::run_scenario(attack(AttackKind::kTokenTheftImplicit));
  c.expect(o.verdict == Verdict::kCompromised, "verdict " + o.label());
  c.expect(!o.captures.access_tokens.empty(), "access_token captured");
  c.expect(o.captures.codes.empty() && o.captures.client_credentials.empty(), "code-flow secrets absent");
}

void matrix(Check& c) {
  std::vector<scenarios::DefenseConfig> defenses;
  for (const auto& n : scenarios::default_defense_names()) defenses.push_back(scenarios::named_defense(n));
  scenarios::MatrixResult m = scenarios::attack_matrix(scenarios::all_attacks(), defenses, 42);
  auto golden = read_tsv(fixture("matrix_seed42.tsv"));
  c.expect(golden.size() == 30 && m.cells.size() == 30, "5x6 table");
  for (std::size_t k = 0; k < std::min(golden.size(), m.cells.size()); ++k) {
    c.expect(m.cells[k].outcome.label() == golden[k][3],
             golden[k][0] + "/" + golden[k][1] + " got " + m.cells[k].outcome.label());
  }
  for (std::size_t i = 0; i < m.attacks.size(); ++i) {
    for (std::size_t j = 0; j < m.defenses.size(); ++j) {
      const auto& cell = m.at(i, j);
      const std::string& d = cell.defense;
      const bool theft = cell.attack.rfind("token-theft", 0) == 0;
      const bool blocked = cell.outcome.verdict == Verdict::kBlocked;
      if (theft && (d == "whitelist" || d == "endpoint-restriction" || d == "csrf" || d == "issuer-binding")) {
        c.expect(blocked, cell.attack + " not blocked by " + d);
      }
      if ((cell.attack == "ssrf" || cell.attack == "dos") && d == "whitelist") {
        c.expect(blocked, cell.attack + " not blocked by whitelist");
      }
      if (cell.attack == "token-theft-code" && d == "client_secret_jwt") {
        for (const auto& cr : cell.outcome.captures.client_credentials) {
          c.expect(cr.client_secret.empty(), "client_secret captured under client_secret_jwt");
        }
        bool audience = !cell.outcome.replay_attempts.empty();
        for (const auto& r : cell.outcome.replay_attempts) audience &= r.error == "AudienceMismatch";
        c.expect(audience, "assertion replay did not fail with AudienceMismatch");
      }
    }
  }
  ScenarioOutcome capped = scenarios::run_scenario(attack(AttackKind::kDos, scenarios::named_defense("fetch-cap").policy));
  c.expect(capped.verdict == Verdict::kBlocked, "dos under fetch cap " + capped.label());
}

void endpoint_bypass(Check& c) {
  client::HardeningPolicy p;
  p.endpoint_restriction = true;
  ScenarioSpec s = attack(AttackKind::kTokenTheftCode, p);
  s.adversary_domain = "evil.honestop.com";
  ScenarioOutcome o = scenarios::run_scenario(s);
  c.expect(o.verdict == Verdict::kCompromised, "verdict " + o.label());
}

void dos_bound(Check& c) {
  ScenarioSpec raw = attack(AttackKind::kDos);
  raw.payload_size = 50 * kMiB;
  ScenarioOutcome open = scenarios::run_scenario(raw);
  std::uint64_t payload = 0;
  for (const auto& e : open.transcript.events()) {
    if (e.path() == "/huge") payload += e.response_bytes;
  }
  c.expect(payload == 50 * kMiB, "unguarded payload pull " + std::to_string(payload));

  ScenarioSpec guarded = raw;
  guarded.defenses.fetch_policy.head_check = true;
  guarded.defenses.fetch_policy.byte_cap = 5 * kMiB;
  guarded.lying_head = true;
  ScenarioOutcome capped = scenarios::run_scenario(guarded);
  c.expect(capped.bytes_pulled_by_client <= 5 * kMiB + 64 * 1024,
           "capped pull " + std::to_string(capped.bytes_pulled_by_client));

  ScenarioOutcome honest = scenarios::run_scenario(ScenarioSpec{});
  std::uint64_t metadata = 0;
  for (const auto& e : honest.transcript.events()) {
    if (e.path() == "/.well-known/openid-configuration") metadata += e.response_bytes;
  }
  c.expect(metadata > 0 && metadata < 4096, "honest metadata " + std::to_string(metadata));
  c.expect(honest.bytes_pulled_by_client > 0 && open.bytes_pulled_by_client / honest.bytes_pulled_by_client >= 1000,
           "ratio " + std::to_string(open.bytes_pulled_by_client) + "/" + std::to_string(honest.bytes_pulled_by_client));
}

void injection(Check& c) {
  const std::string needle = "<script>alert(1)</script>";
  auto stored = [&](const ScenarioOutcome& o) {
    for (const auto& p : o.profiles) {
      for (const auto* f : {&p.subject, &p.name, &p.preferred_username, &p.email}) {
        if (f->find(needle) != std::string::npos) return true;
      }
    }
    return false;
  };
  c.expect(stored(scenarios::run_scenario(attack(AttackKind::kInjection))), "payload missing with sanitize off");
  client::HardeningPolicy p;
  p.sanitize_userinfo = true;
  c.expect(!stored(scenarios::run_scenario(attack(AttackKind::kInjection, p))), "payload present with sanitize on");
}

void jose_kat(Check& c) {
  auto rows = read_tsv(fixture("jose_kat.tsv"));
  c.expect(rows.size() >= 3, "fewer than 3 vectors");
  for (const auto& r : rows) {
    jose::Key key = jose::Key::symmetric(r[2], r[1]);
    c.expect(jose::jws_sign(jose::JoseHeader{}, Json::parse(r[3]), key) == r[4], "vector " + r[0]);
  }
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string material(32, '\0');
    for (auto& ch : material) ch = static_cast<char>(rng());
    jose::Key key = jose::Key::symmetric("k", material);
    Json claims{{"i", i}, {"v", std::to_string(rng())}};
    std::string compact = jose::jws_sign(jose::JoseHeader{}, claims, key);
    try {
      if (jose::jws_verify(compact, key) != claims) ++failures;
    } catch (const Error&) {
      ++failures;
    }
    std::size_t dot = compact.rfind('.') + 1;
    std::string sig = *jose::base64url_decode(compact.substr(dot));
    sig[rng() % sig.size()] ^= static_cast<char>(1 + rng() % 255);
    try {
      jose::jws_verify(compact.substr(0, dot) + jose::base64url_encode(sig), key);
      ++failures;
    } catch (const Error&) {
    }
  }
  c.expect(failures == 0, std::to_string(failures) + " property failures");
}

void validator(Check& c) {
  std::mt19937_64 rng(99);
  int failures = 0;
  auto hex = [&] { return jose::to_hex(std::to_string(rng())); };
  for (int i = 0; i < 1000; ++i) {
    std::string material(32, '\0');
    for (auto& ch : material) ch = static_cast<char>(rng());
    jose::Key key = jose::Key::symmetric("op-1", material);
    IdTokenClaims claims{Url::parse("https://honestop.com/"), hex(), 1700003600, 1700000000, hex(), {hex()}};
    ValidationExpectations ex{claims.iss, claims.aud[0], claims.nonce,
                              1700000000 + static_cast<EpochSeconds>(rng() % 3600), kDefaultClockSkew, key};
    auto result = [&](const Json& j) -> std::optional<ErrorCode> {
      try {
        validate_id_token(jose::jws_sign(jose::JoseHeader{}, j, key), ex);
        return std::nullopt;
      } catch (const Error& e) {
        return e.code();
      }
    };
    Json good = claims.to_json();
    if (result(good)) ++failures;
    Json m = good;
    m["iss"] = "https://malicious.com/";
    if (result(m) != ErrorCode::kIssuerMismatch) ++failures;
    m = good;
    m["aud"] = Json::array();
    if (result(m) != ErrorCode::kAudienceMismatch) ++failures;
    m = good;
    m["nonce"] = hex();
    if (result(m) != ErrorCode::kNonceMismatch) ++failures;
    m = good;
    m["exp"] = ex.now - kDefaultClockSkew - 1;
    if (result(m) != ErrorCode::kExpired) ++failures;
    std::string compact = jose::jws_sign(jose::JoseHeader{}, good, key);
    compact[compact.size() - 2] = compact[compact.size() - 2] == 'A' ? 'B' : 'A';
    try {
      validate_id_token(compact, ex);
      ++failures;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBadSignature) ++failures;
    }
  }
  c.expect(failures == 0, std::to_string(failures) + " property failures");
}

void determinism(Check& c) {
  std::vector<ScenarioSpec> specs{ScenarioSpec{}};
  for (auto k : scenarios::all_attacks()) specs.push_back(attack(k));
  for (const auto& s : specs) {
    ScenarioOutcome a = scenarios::run_scenario(s);
    ScenarioOutcome b = scenarios::run_scenario(s);
    c.expect(scenarios::render_report(a, scenarios::ReportFormat::kJson) ==
                 scenarios::render_report(b, scenarios::ReportFormat::kJson),
             "report differs for " + scenarios::attack_label(s.attack));
    c.expect(a.transcript_digest == b.transcript_digest, "digest differs for " + scenarios::attack_label(s.attack));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "honest baseline completes and its id_token validates", honest_baseline},
      {2, "code-flow token theft captures code and client credentials", code_theft},
      {3, "implicit token theft captures the access_token", implicit_theft},
      {4, "attack x defense matrix matches the frozen golden table", matrix},
      {5, "endpoint restriction bypassed from a subdomain of the honest OP", endpoint_bypass},
      {6, "metadata download bounded by the byte cap", dos_bound},
      {7, "script payload stored unless userinfo is sanitized", injection},
      {8, "HS256 known answers and sign/verify properties", jose_kat},
      {9, "id_token validator mutation properties", validator},
      {10, "reports and transcripts are deterministic", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.notes.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.notes.empty();
    failed += ok ? 0 : 1;
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << "\n";
    for (const auto& n : check.notes) std::cout << "    " << n << "\n";
  }
  return failed == 0 ? 0 : 1;
}
