// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oidclab/oidclab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "scenarios/matrix.hpp"
#include "scenarios/report.hpp"
#include "scenarios/world.hpp"

struct oidclab_scenario {
  oidclab::scenarios::ScenarioSpec spec;
};

struct oidclab_outcome {
  oidclab::scenarios::ScenarioOutcome outcome;
};

struct oidclab_matrix {
  oidclab::scenarios::MatrixResult result;
};

namespace {

using oidclab::ErrorCode;
namespace sc = oidclab::scenarios;

thread_local std::string last_error;

oidclab_status set_error(oidclab_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

oidclab_status from_error(const oidclab::Error& e) {
  std::string message = std::string(oidclab::error_name(e.code()));
  if (!e.detail().empty()) message += ": " + e.detail();
  if (e.code() == ErrorCode::kScenarioPanic) return set_error(OIDCLAB_E_SCENARIO_PANIC, message);
  return set_error(OIDCLAB_E_INVALID_ARGUMENT, message);
}

// Runs `body`, mapping exceptions onto status codes. Nothing escapes.
template <typename F>
oidclab_status guard(F&& body) {
  try {
    body();
    return OIDCLAB_OK;
  } catch (const oidclab::Error& e) {
    return from_error(e);
  } catch (const oidclab::Json::parse_error& e) {
    return set_error(OIDCLAB_E_PARSE, e.what());
  } catch (const std::exception& e) {
    return set_error(OIDCLAB_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(OIDCLAB_E_INTERNAL, "unknown exception");
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

sc::ReportFormat to_format(oidclab_format f) {
  switch (f) {
    case OIDCLAB_FORMAT_JSON: return sc::ReportFormat::kJson;
    case OIDCLAB_FORMAT_TEXT: return sc::ReportFormat::kText;
  }
  oidclab::fail(ErrorCode::kInvalidArgument, "unknown format");
}

#define OIDCLAB_REQUIRE(p) \
  if (!(p)) return set_error(OIDCLAB_E_NULL_ARGUMENT, #p " is NULL")

}  // namespace

extern "C" {

const char* oidclab_version(void) { return "0.1.0"; }

const char* oidclab_last_error(void) { return last_error.c_str(); }

const char* oidclab_status_name(oidclab_status status) {
  switch (status) {
    case OIDCLAB_OK: return "OK";
    case OIDCLAB_E_NULL_ARGUMENT: return "NULL_ARGUMENT";
    case OIDCLAB_E_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case OIDCLAB_E_PARSE: return "PARSE";
    case OIDCLAB_E_SCENARIO_PANIC: return "SCENARIO_PANIC";
    case OIDCLAB_E_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

void oidclab_string_free(char* s) { std::free(s); }

oidclab_status oidclab_scenario_new(oidclab_scenario** out) {
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = new oidclab_scenario{}; });
}

oidclab_status oidclab_scenario_from_json(const char* json, oidclab_scenario** out) {
  OIDCLAB_REQUIRE(json);
  OIDCLAB_REQUIRE(out);
  return guard([&] {
    auto spec = sc::ScenarioSpec::from_json(oidclab::Json::parse(json));
    *out = new oidclab_scenario{std::move(spec)};
  });
}

oidclab_status oidclab_scenario_to_json(const oidclab_scenario* s, char** out) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = copy_out(s->spec.to_json().dump() + "\n"); });
}

void oidclab_scenario_free(oidclab_scenario* s) { delete s; }

oidclab_status oidclab_scenario_set_attack(oidclab_scenario* s, const char* attack) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(attack);
  return guard([&] { s->spec.attack = sc::attack_from_label(attack); });
}

oidclab_status oidclab_scenario_set_flow(oidclab_scenario* s, const char* flow) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(flow);
  return guard([&] { s->spec.flow = oidclab::client::flow_from_name(flow); });
}

oidclab_status oidclab_scenario_set_seed(oidclab_scenario* s, uint64_t seed) {
  OIDCLAB_REQUIRE(s);
  s->spec.seed = seed;
  return OIDCLAB_OK;
}

oidclab_status oidclab_scenario_set_whitelist(oidclab_scenario* s, const char* urls) {
  OIDCLAB_REQUIRE(s);
  return guard([&] {
    if (!urls) {
      s->spec.defenses.whitelist.reset();
      return;
    }
    std::vector<oidclab::Url> list;
    std::string_view rest = urls;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      if (!item.empty()) {
        auto url = oidclab::Url::try_parse(item);
        if (!url) oidclab::fail(ErrorCode::kInvalidArgument, "whitelist entry " + std::string(item));
        list.push_back(*url);
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    s->spec.defenses.whitelist = std::move(list);
  });
}

oidclab_status oidclab_scenario_set_flag(oidclab_scenario* s, const char* name, int on) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(name);
  return guard([&] {
    const std::string_view n = name;
    auto& d = s->spec.defenses;
    const bool v = on != 0;
    if (n == "endpoint_restriction") {
      d.endpoint_restriction = v;
    } else if (n == "csrf_protection") {
      d.csrf_protection = v;
    } else if (n == "require_issuer_binding") {
      d.require_issuer_binding = v;
    } else if (n == "sanitize_userinfo") {
      d.sanitize_userinfo = v;
    } else if (n == "head_check") {
      d.fetch_policy.head_check = v;
    } else if (n == "lying_head") {
      s->spec.lying_head = v;
    } else {
      oidclab::fail(ErrorCode::kInvalidArgument, "unknown flag " + std::string(n));
    }
  });
}

oidclab_status oidclab_scenario_set_byte_cap(oidclab_scenario* s, uint64_t bytes) {
  OIDCLAB_REQUIRE(s);
  s->spec.defenses.fetch_policy.byte_cap = bytes;
  return OIDCLAB_OK;
}

oidclab_status oidclab_scenario_set_client_auth_mode(oidclab_scenario* s, const char* mode) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(mode);
  return guard([&] { s->spec.defenses.client_auth_mode = oidclab::client::auth_mode_from_name(mode); });
}

oidclab_status oidclab_scenario_set_payload_size(oidclab_scenario* s, uint64_t bytes) {
  OIDCLAB_REQUIRE(s);
  s->spec.payload_size = bytes;
  return OIDCLAB_OK;
}

oidclab_status oidclab_scenario_set_adversary_domain(oidclab_scenario* s, const char* host) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(host);
  return guard([&] {
    std::string h = oidclab::to_lower(host);
    if (!oidclab::is_valid_hostname(h) || h.find('.') == std::string::npos) {
      oidclab::fail(ErrorCode::kInvalidArgument, "adversary domain " + h);
    }
    s->spec.adversary_domain = std::move(h);
  });
}

oidclab_status oidclab_run(const oidclab_scenario* s, oidclab_outcome** out) {
  OIDCLAB_REQUIRE(s);
  OIDCLAB_REQUIRE(out);
  return guard([&] {
    s->spec.defenses.fetch_policy.validate();
    *out = new oidclab_outcome{sc::run_scenario(s->spec)};
  });
}

oidclab_verdict oidclab_outcome_verdict(const oidclab_outcome* o) {
  if (!o) return OIDCLAB_VERDICT_BLOCKED;
  switch (o->outcome.verdict) {
    case sc::Verdict::kCompromised: return OIDCLAB_VERDICT_COMPROMISED;
    case sc::Verdict::kBlocked: return OIDCLAB_VERDICT_BLOCKED;
    case sc::Verdict::kCompletedHonest: return OIDCLAB_VERDICT_COMPLETED_HONEST;
  }
  return OIDCLAB_VERDICT_BLOCKED;
}

oidclab_status oidclab_outcome_label(const oidclab_outcome* o, char** out) {
  OIDCLAB_REQUIRE(o);
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = copy_out(o->outcome.label()); });
}

oidclab_status oidclab_outcome_report(const oidclab_outcome* o, oidclab_format format, char** out) {
  OIDCLAB_REQUIRE(o);
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = copy_out(sc::render_report(o->outcome, to_format(format))); });
}

oidclab_status oidclab_outcome_transcript_jsonl(const oidclab_outcome* o, char** out) {
  OIDCLAB_REQUIRE(o);
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = copy_out(o->outcome.transcript.to_jsonl()); });
}

uint64_t oidclab_outcome_bytes_pulled_by_client(const oidclab_outcome* o) {
  return o ? o->outcome.bytes_pulled_by_client : 0;
}

void oidclab_outcome_free(oidclab_outcome* o) { delete o; }

oidclab_status oidclab_matrix_run(const char* const* attacks, size_t n_attacks, const char* const* defenses,
                                  size_t n_defenses, uint64_t seed, const oidclab_scenario* base,
                                  unsigned workers, oidclab_matrix** out) {
  OIDCLAB_REQUIRE(out);
  if (n_attacks > 0) OIDCLAB_REQUIRE(attacks);
  if (n_defenses > 0) OIDCLAB_REQUIRE(defenses);
  return guard([&] {
    std::vector<oidclab::adversary::AttackKind> kinds;
    if (!attacks) {
      kinds = sc::all_attacks();
    } else {
      for (size_t i = 0; i < n_attacks; ++i) {
        if (!attacks[i]) oidclab::fail(ErrorCode::kInvalidArgument, "NULL attack name");
        kinds.push_back(oidclab::adversary::attack_from_name(attacks[i]));
      }
    }
    std::vector<sc::DefenseConfig> configs;
    if (!defenses) {
      for (const auto& name : sc::default_defense_names()) configs.push_back(sc::named_defense(name));
    } else {
      for (size_t j = 0; j < n_defenses; ++j) {
        if (!defenses[j]) oidclab::fail(ErrorCode::kInvalidArgument, "NULL defense name");
        configs.push_back(sc::named_defense(defenses[j]));
      }
    }
    sc::ScenarioSpec spec = base ? base->spec : sc::ScenarioSpec{};
    *out = new oidclab_matrix{sc::attack_matrix(kinds, configs, seed, spec, workers)};
  });
}

oidclab_status oidclab_matrix_report(const oidclab_matrix* m, oidclab_format format, char** out) {
  OIDCLAB_REQUIRE(m);
  OIDCLAB_REQUIRE(out);
  return guard([&] { *out = copy_out(sc::render_matrix(m->result, to_format(format))); });
}

void oidclab_matrix_free(oidclab_matrix* m) { delete m; }

}  // extern "C"
