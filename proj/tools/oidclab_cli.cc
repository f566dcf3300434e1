// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API.
//
//   oidclab run --attack token-theft-code --expect compromised --report out.json
//   oidclab matrix --format text
//   oidclab transcript --attack ssrf > events.jsonl
//
// Exit codes: 0 success or expectation met, 1 expectation not met, 2 usage
// error, 3 the run itself failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oidclab/oidclab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct ScenarioOptions {
  std::string spec_path;
  std::string attack = "none";
  std::string flow = "code";
  std::uint64_t seed = 42;
  std::vector<std::string> whitelist;
  bool endpoint_restriction = false;
  bool head_check = false;
  std::uint64_t byte_cap = 0;
  bool csrf_protection = false;
  std::string client_auth_mode = "secret_post";
  bool require_issuer_binding = false;
  bool sanitize_userinfo = false;
  std::uint64_t payload_size = 0;
  bool lying_head = false;
  std::string adversary_domain;
};

struct OutputOptions {
  std::string report_path;
  std::string format = "json";
};

// Thrown for failures the user caused (bad values) as opposed to run
// failures.
struct UsageError {
  std::string message;
};
struct RunError {
  std::string message;
};

struct StringDeleter {
  void operator()(char* s) const { oidclab_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ScenarioDeleter {
  void operator()(oidclab_scenario* s) const { oidclab_scenario_free(s); }
};
struct OutcomeDeleter {
  void operator()(oidclab_outcome* o) const { oidclab_outcome_free(o); }
};
struct MatrixDeleter {
  void operator()(oidclab_matrix* m) const { oidclab_matrix_free(m); }
};

void check(oidclab_status status) {
  if (status == OIDCLAB_OK) return;
  std::string message = std::string(oidclab_status_name(status)) + ": " + oidclab_last_error();
  if (status == OIDCLAB_E_INVALID_ARGUMENT || status == OIDCLAB_E_PARSE) throw UsageError{message};
  throw RunError{message};
}

std::string take(char* raw) {
  OwnedString owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

oidclab_format format_of(const std::string& name) {
  return name == "text" ? OIDCLAB_FORMAT_TEXT : OIDCLAB_FORMAT_JSON;
}

void add_scenario_options(CLI::App* app, ScenarioOptions& o) {
  app->add_option("--spec", o.spec_path, "Scenario spec JSON file; flags given explicitly override it")
      ->check(CLI::ExistingFile);
  app->add_option("--attack", o.attack, "Attack to run")
      ->check(CLI::IsMember({"none", "token-theft-code", "token-theft-implicit", "ssrf", "injection", "dos"}));
  app->add_option("--flow", o.flow, "Response type the client requests")->check(CLI::IsMember({"code", "implicit"}));
  app->add_option("--seed", o.seed, "Seed for every generated value");
  app->add_option("--whitelist", o.whitelist, "Allowed OP origins")->delimiter(',');
  app->add_flag("--endpoint-restriction", o.endpoint_restriction,
                "Require token and authorization endpoints on one domain");
  app->add_flag("--head-check", o.head_check, "Probe with HEAD before downloading metadata");
  app->add_option("--byte-cap", o.byte_cap, "Stop downloads after this many bytes (0 = off)");
  app->add_flag("--csrf-protection,--csrf", o.csrf_protection, "Require a CSRF token to start a login");
  app->add_option("--client-auth-mode", o.client_auth_mode, "Token endpoint authentication")
      ->check(CLI::IsMember({"secret_post", "client_secret_jwt", "private_key_jwt"}));
  app->add_flag("--require-issuer-binding,--issuer-binding", o.require_issuer_binding,
                "Send and check iss in the authorization response");
  app->add_flag("--sanitize-userinfo", o.sanitize_userinfo, "HTML-escape userinfo before storing it");
  app->add_option("--payload-size", o.payload_size, "Size of the adversary's large payload in bytes");
  app->add_flag("--lying-head", o.lying_head, "Adversary answers HEAD with a small Content-Length");
  app->add_option("--adversary-domain", o.adversary_domain, "Host of the malicious discovery service");
}

bool given(const CLI::App* app, const std::string& name) { return app->count(name) > 0; }

std::unique_ptr<oidclab_scenario, ScenarioDeleter> build_scenario(const CLI::App* app, const ScenarioOptions& o) {
  oidclab_scenario* raw = nullptr;
  if (!o.spec_path.empty()) {
    std::ifstream in(o.spec_path);
    std::string json((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    check(oidclab_scenario_from_json(json.c_str(), &raw));
  } else {
    check(oidclab_scenario_new(&raw));
  }
  std::unique_ptr<oidclab_scenario, ScenarioDeleter> s(raw);
  const bool from_file = !o.spec_path.empty();
  auto wanted = [&](const std::string& name) { return !from_file || given(app, name); };

  if (wanted("--attack")) check(oidclab_scenario_set_attack(s.get(), o.attack.c_str()));
  if (wanted("--flow")) {
    // Implicit token theft only makes sense in the implicit flow.
    std::string flow = o.flow;
    if (!given(app, "--flow") && o.attack == "token-theft-implicit") flow = "implicit";
    check(oidclab_scenario_set_flow(s.get(), flow.c_str()));
  }
  if (wanted("--seed")) check(oidclab_scenario_set_seed(s.get(), o.seed));
  if (given(app, "--whitelist")) {
    std::string joined;
    for (const auto& u : o.whitelist) joined += (joined.empty() ? "" : ",") + u;
    check(oidclab_scenario_set_whitelist(s.get(), joined.c_str()));
  }
  if (given(app, "--endpoint-restriction")) check(oidclab_scenario_set_flag(s.get(), "endpoint_restriction", 1));
  if (given(app, "--head-check")) check(oidclab_scenario_set_flag(s.get(), "head_check", 1));
  if (given(app, "--byte-cap")) check(oidclab_scenario_set_byte_cap(s.get(), o.byte_cap));
  if (given(app, "--csrf-protection")) check(oidclab_scenario_set_flag(s.get(), "csrf_protection", 1));
  if (given(app, "--client-auth-mode")) check(oidclab_scenario_set_client_auth_mode(s.get(), o.client_auth_mode.c_str()));
  if (given(app, "--require-issuer-binding")) {
    check(oidclab_scenario_set_flag(s.get(), "require_issuer_binding", 1));
  }
  if (given(app, "--sanitize-userinfo")) check(oidclab_scenario_set_flag(s.get(), "sanitize_userinfo", 1));
  if (given(app, "--payload-size")) check(oidclab_scenario_set_payload_size(s.get(), o.payload_size));
  if (given(app, "--lying-head")) check(oidclab_scenario_set_flag(s.get(), "lying_head", 1));
  if (given(app, "--adversary-domain")) {
    check(oidclab_scenario_set_adversary_domain(s.get(), o.adversary_domain.c_str()));
  }
  return s;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw RunError{"cannot write " + path};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OpenID Connect discovery attack lab"};
  app.require_subcommand(1);
  app.fallthrough(false);

  ScenarioOptions run_opts;
  OutputOptions run_out;
  std::string expect;
  CLI::App* run = app.add_subcommand("run", "Run one scenario and report its verdict");
  add_scenario_options(run, run_opts);
  run->add_option("--report", run_out.report_path, "Write the report here instead of stdout");
  run->add_option("--format", run_out.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--expect", expect, "Exit 1 unless the verdict matches")
      ->check(CLI::IsMember({"blocked", "compromised", "honest"}));

  ScenarioOptions tr_opts;
  std::string tr_path;
  CLI::App* transcript = app.add_subcommand("transcript", "Run one scenario and print its JSON Lines transcript");
  add_scenario_options(transcript, tr_opts);
  transcript->add_option("--output", tr_path, "Write the transcript here instead of stdout");

  std::vector<std::string> attacks;
  std::vector<std::string> defenses;
  std::uint64_t matrix_seed = 42;
  unsigned workers = 0;
  std::uint64_t matrix_payload = 0;
  bool matrix_lying = false;
  OutputOptions matrix_out;
  CLI::App* matrix = app.add_subcommand("matrix", "Run every attack against every defense config");
  matrix->add_option("--attacks", attacks, "Attacks (rows); default all five")->delimiter(',');
  matrix->add_option("--defenses", defenses,
                     "Defense configs (columns): none, whitelist, endpoint-restriction, csrf, "
                     "client_secret_jwt, private_key_jwt, issuer-binding, fetch-cap, sanitize")
      ->delimiter(',');
  matrix->add_option("--seed", matrix_seed, "Base seed; cell (i, j) uses seed + i * |defenses| + j");
  matrix->add_option("--workers", workers, "Parallel runs (0 = one per core)");
  matrix->add_option("--payload-size", matrix_payload, "Size of the adversary's large payload in bytes");
  matrix->add_flag("--lying-head", matrix_lying, "Adversary answers HEAD with a small Content-Length");
  matrix->add_option("--report", matrix_out.report_path, "Write the table here instead of stdout");
  matrix->add_option("--format", matrix_out.format, "Table format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run) {
      auto scenario = build_scenario(run, run_opts);
      oidclab_outcome* raw = nullptr;
      check(oidclab_run(scenario.get(), &raw));
      std::unique_ptr<oidclab_outcome, OutcomeDeleter> outcome(raw);
      char* report = nullptr;
      check(oidclab_outcome_report(outcome.get(), format_of(run_out.format), &report));
      emit(take(report), run_out.report_path);
      char* label = nullptr;
      check(oidclab_outcome_label(outcome.get(), &label));
      const std::string verdict_label = take(label);
      if (!run_out.report_path.empty()) std::cout << verdict_label << "\n";
      if (expect.empty()) return kExitOk;
      const oidclab_verdict v = oidclab_outcome_verdict(outcome.get());
      bool met = false;
      if (expect == "compromised") met = v == OIDCLAB_VERDICT_COMPROMISED;
      if (expect == "blocked") met = v != OIDCLAB_VERDICT_COMPROMISED;
      if (expect == "honest") met = v == OIDCLAB_VERDICT_COMPLETED_HONEST;
      if (!met) std::cerr << "expected " << expect << ", got " << verdict_label << "\n";
      return met ? kExitOk : kExitMismatch;
    }
    if (*transcript) {
      auto scenario = build_scenario(transcript, tr_opts);
      oidclab_outcome* raw = nullptr;
      check(oidclab_run(scenario.get(), &raw));
      std::unique_ptr<oidclab_outcome, OutcomeDeleter> outcome(raw);
      char* jsonl = nullptr;
      check(oidclab_outcome_transcript_jsonl(outcome.get(), &jsonl));
      emit(take(jsonl), tr_path);
      return kExitOk;
    }
    if (*matrix) {
      std::vector<const char*> a;
      for (const auto& s : attacks) a.push_back(s.c_str());
      std::vector<const char*> d;
      for (const auto& s : defenses) d.push_back(s.c_str());
      std::unique_ptr<oidclab_scenario, ScenarioDeleter> base;
      {
        oidclab_scenario* raw = nullptr;
        check(oidclab_scenario_new(&raw));
        base.reset(raw);
      }
      if (matrix->count("--payload-size")) check(oidclab_scenario_set_payload_size(base.get(), matrix_payload));
      if (matrix_lying) check(oidclab_scenario_set_flag(base.get(), "lying_head", 1));
      oidclab_matrix* raw = nullptr;
      check(oidclab_matrix_run(a.empty() ? nullptr : a.data(), a.size(), d.empty() ? nullptr : d.data(),
                               d.size(), matrix_seed, base.get(), workers, &raw));
      std::unique_ptr<oidclab_matrix, MatrixDeleter> result(raw);
      char* table = nullptr;
      check(oidclab_matrix_report(result.get(), format_of(matrix_out.format), &table));
      emit(take(table), matrix_out.report_path);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n\n" << app.help();
    return kExitUsage;
  } catch (const RunError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
