// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenarios/report.hpp"

#include <algorithm>
#include <sstream>

namespace oidclab::scenarios {

ReportFormat report_format_from_name(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "text") return ReportFormat::kText;
  fail(ErrorCode::kInvalidArgument, "unknown report format " + std::string(name));
}

namespace {

std::string_view login_status_name(client::LoginRecord::Status s) {
  switch (s) {
    case client::LoginRecord::Status::kPending: return "pending";
    case client::LoginRecord::Status::kLoggedIn: return "logged_in";
    case client::LoginRecord::Status::kAborted: return "aborted";
  }
  return "?";
}

std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

}  // namespace

Json outcome_to_json(const ScenarioOutcome& o) {
  Json captures = o.captures.to_json();
  captures.erase("ssrf_hits");
  Json hits = Json::array();
  for (const auto& u : o.ssrf_targets_hit) hits.push_back(u.render());
  Json redeemed = Json::array();
  for (const auto& r : o.redeemed) redeemed.push_back(r.to_json());
  Json replays = Json::array();
  for (const auto& r : o.replay_attempts) replays.push_back(r.to_json());

  Json abort;
  if (!o.abort_reason.empty()) {
    abort = Json{{"reason", o.abort_reason}, {"step", o.abort_step}, {"detail", o.abort_detail}};
  }
  return Json{
      {"verdict", std::string(verdict_name(o.verdict))},
      {"label", o.label()},
      {"abort", std::move(abort)},
      {"captures", std::move(captures)},
      {"ssrf_hits", std::move(hits)},
      {"redeemed", std::move(redeemed)},
      {"replay_attempts", std::move(replays)},
      {"bytes", Json{{"pulled_by_client", o.bytes_pulled_by_client},
                     {"total_response", o.transcript.total_response_bytes()}}},
      {"injected_payload_stored", o.injected_payload_stored},
      {"login", Json{{"status", std::string(login_status_name(o.login.status))},
                     {"issuer", o.login.issuer},
                     {"subject", o.login.subject}}},
      {"transcript_ref", Json{{"events", o.transcript.size()}, {"sha256", o.transcript_digest}}},
      {"scenario", o.spec.to_json()},
  };
}

Json matrix_to_json(const MatrixResult& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.attacks.size(); ++i) {
    Json cells = Json::object();
    for (std::size_t j = 0; j < m.defenses.size(); ++j) cells[m.defenses[j]] = m.at(i, j).outcome.label();
    rows.push_back(Json{{"attack", m.attacks[i]}, {"cells", std::move(cells)}});
  }
  Json seeds = Json::array();
  for (const auto& c : m.cells) seeds.push_back(c.outcome.spec.seed);
  return Json{{"attacks", m.attacks}, {"defenses", m.defenses}, {"rows", std::move(rows)}, {"seeds", seeds}};
}

std::string render_report(const ScenarioOutcome& o, ReportFormat format) {
  if (format == ReportFormat::kJson) return dump(outcome_to_json(o)) + "\n";

  std::ostringstream out;
  out << "scenario   " << attack_label(o.spec.attack) << " / " << client::flow_name(o.spec.flow) << " flow, seed "
      << o.spec.seed << "\n";
  out << "verdict    " << o.label() << "\n";
  if (!o.abort_reason.empty()) out << "abort      " << o.abort_reason << " at " << o.abort_step << ": " << o.abort_detail << "\n";
  out << "login      " << login_status_name(o.login.status);
  if (!o.login.subject.empty()) out << " as " << o.login.subject << " via " << o.login.issuer;
  out << "\n";
  auto list = [&](const char* title, const std::vector<std::string>& values) {
    out << title;
    if (values.empty()) out << " (none)";
    for (const auto& v : values) out << "\n           " << v;
    out << "\n";
  };
  list("codes     ", o.captures.codes);
  std::vector<std::string> creds;
  for (const auto& c : o.captures.client_credentials) creds.push_back(c.client_id + " / " + c.client_secret);
  list("client    ", creds);
  list("tokens    ", o.captures.access_tokens);
  list("assertion ", o.captures.assertions);
  std::vector<std::string> hits;
  for (const auto& u : o.ssrf_targets_hit) hits.push_back(u.render());
  list("ssrf      ", hits);
  for (const auto& r : o.redeemed) {
    out << "redeemed   via " << r.via << " subject " << r.subject;
    if (!r.access_token.empty()) out << "\n           access_token " << r.access_token;
    if (!r.id_token.empty()) out << "\n           id_token " << r.id_token;
    out << "\n";
  }
  for (const auto& r : o.replay_attempts) out << "replay     status " << r.status << " " << r.error << "\n";
  out << "bytes      " << o.bytes_pulled_by_client << " pulled by client\n";
  out << "injected   " << (o.injected_payload_stored ? "stored" : "not stored") << "\n";
  out << "transcript " << o.transcript.size() << " events, sha256 " << o.transcript_digest << "\n";
  return out.str();
}

std::string render_matrix(const MatrixResult& m, ReportFormat format) {
  if (format == ReportFormat::kJson) return dump(matrix_to_json(m)) + "\n";

  std::vector<std::size_t> width(m.defenses.size() + 1, 0);
  width[0] = std::string("attack").size();
  for (const auto& a : m.attacks) width[0] = std::max(width[0], a.size());
  for (std::size_t j = 0; j < m.defenses.size(); ++j) {
    width[j + 1] = m.defenses[j].size();
    for (std::size_t i = 0; i < m.attacks.size(); ++i) {
      width[j + 1] = std::max(width[j + 1], m.at(i, j).outcome.label().size());
    }
  }
  std::ostringstream out;
  auto cell = [&](const std::string& s, std::size_t w) { out << s << std::string(w - s.size() + 2, ' '); };
  cell("attack", width[0]);
  for (std::size_t j = 0; j < m.defenses.size(); ++j) cell(m.defenses[j], width[j + 1]);
  out << "\n";
  for (std::size_t i = 0; i < m.attacks.size(); ++i) {
    cell(m.attacks[i], width[0]);
    for (std::size_t j = 0; j < m.defenses.size(); ++j) cell(m.at(i, j).outcome.label(), width[j + 1]);
    out << "\n";
  }
  return out.str();
}

}  // namespace oidclab::scenarios
